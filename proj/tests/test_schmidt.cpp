#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "pecc/moment_oracle.hpp"
#include "pecc/schmidt_state.hpp"

using namespace pecc;

namespace {
// Rebuilds a state with every amplitude multiplied by a constant phase.
SchmidtDiagonalState with_global_phase(const SchmidtDiagonalState& s,
                                       double phase) {
  Eigen::VectorXcd amps =
      s.amplitudes() * std::exp(std::complex<double>(0.0, phase));
  return SchmidtDiagonalState::from_amplitudes(std::move(amps), false);
}

// Same moduli, no sign alternation: d_n = sqrt(1-λ²) (+λ)^n.
SchmidtDiagonalState sign_flipped_tmsv(double lambda) {
  Eigen::VectorXcd amps = tmsv_from_lambda(lambda).amplitudes().cwiseAbs();
  return SchmidtDiagonalState::from_amplitudes(std::move(amps), false);
}
}  // namespace

TEST_CASE("tmsv amplitudes are the geometric alternating sequence") {
  const SchmidtDiagonalState s = tmsv_from_lambda(0.5);
  CHECK(std::abs(s.amplitudes()(0).real() - 0.8660254037844386) < 1e-15);
  CHECK(std::abs(s.amplitudes()(1).real() - -0.4330127018922193) < 1e-15);
  CHECK(std::abs(s.amplitudes()(2).real() - 0.21650635094610965) < 1e-15);
  CHECK(s.amplitudes()(1).imag() == 0.0);
  CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
  CHECK(s.tail_mass() < 1e-10);
  CHECK(s.normalized());
}

TEST_CASE("tmsv at lambda=0 is the two-mode vacuum") {
  const SchmidtDiagonalState s = tmsv_from_lambda(0.0);
  CHECK(s.amplitudes()(0) == std::complex<double>(1.0, 0.0));
  for (int n = 1; n <= s.n_max(); ++n) CHECK(std::abs(s.amplitudes()(n)) == 0.0);
  CHECK(entropy_of_entanglement(s) == 0.0);
}

TEST_CASE("tmsv domain and truncation-cap errors") {
  CHECK_THROWS_AS(tmsv_from_lambda(-0.1), std::domain_error);
  CHECK_THROWS_AS(tmsv_from_lambda(1.0), std::domain_error);
  CHECK_THROWS_AS(tmsv_from_lambda(0.9999), std::domain_error);  // beyond cap
  TruncationPolicy fixed;
  fixed.n_max_override = 12;
  CHECK(tmsv_from_lambda(0.3, fixed).n_max() == 12);
}

TEST_CASE("squeezing dB conversion") {
  CHECK(lambda_from_squeezing_db(0.0) == 0.0);
  CHECK(std::abs(squeezing_db_from_lambda(0.5) - 4.771212547196624) < 1e-12);
  CHECK(std::abs(lambda_from_squeezing_db(4.771212547196624) - 0.5) < 1e-14);
  for (double db = 0.0; db <= 20.0; db += 2.5)
    CHECK(std::abs(squeezing_db_from_lambda(lambda_from_squeezing_db(db)) - db) <
          1e-12);
  CHECK_THROWS_AS(lambda_from_squeezing_db(-0.1), std::domain_error);
  CHECK_THROWS_AS(squeezing_db_from_lambda(1.0), std::domain_error);
}

TEST_CASE("duan variance sum reproduces the closed form at a=1") {
  CHECK(duan_variance_sum(tmsv_from_lambda(0.0), 1.0) == 2.0);
  CHECK(std::abs(duan_variance_sum(tmsv_from_lambda(0.5), 1.0) - 2.0 / 3.0) <
        1e-10);
  for (double lambda = 0.0; lambda < 0.951; lambda += 0.05) {
    const double closed = 2.0 * (1.0 - lambda) / (1.0 + lambda);
    CHECK(std::abs(duan_variance_sum(tmsv_from_lambda(lambda), 1.0) - closed) <
          1e-10);
  }
}

TEST_CASE("duan variance sum for a=-1: anti-squeezed combination") {
  // With the alternating-sign amplitudes, x1+x2 / p1-p2 (a=1) is squeezed and
  // x1-x2 / p1+p2 (a=-1) is anti-squeezed: sum = 2(1+λ)/(1-λ).  The
  // symmetric 2(1-λ)/(1+λ) value belongs to the same-|a| combination of the
  // non-alternating state; both directions are pinned here and both are
  // cross-checked against the dense-matrix oracle.
  const SchmidtDiagonalState alt = tmsv_from_lambda(0.5);
  const double anti = duan_variance_sum(alt, -1.0);
  CHECK(std::abs(anti - 6.0) < 1e-9);
  CHECK(std::abs(anti - dense_duan_variance_sum(alt, -1.0)) < 1e-9);

  const SchmidtDiagonalState plain = sign_flipped_tmsv(0.5);
  const double squeezed = duan_variance_sum(plain, -1.0);
  CHECK(std::abs(squeezed - 2.0 / 3.0) < 1e-9);
  CHECK(std::abs(squeezed - dense_duan_variance_sum(plain, -1.0)) < 1e-9);
}

TEST_CASE("duan variance sum handles general weights via the oracle") {
  const SchmidtDiagonalState s = tmsv_from_lambda(0.4);
  for (double a : {0.5, 2.0, -0.7, 1.3}) {
    CHECK(std::abs(duan_variance_sum(s, a) - dense_duan_variance_sum(s, a)) <
          1e-9);
  }
}

TEST_CASE("duan variance sum contract errors") {
  const SchmidtDiagonalState s = tmsv_from_lambda(0.5);
  CHECK_THROWS_AS(duan_variance_sum(s, 0.0), std::domain_error);
  Eigen::VectorXcd half = s.amplitudes() * 0.5;
  CHECK_THROWS_AS(duan_variance_sum(SchmidtDiagonalState::raw(half), 1.0),
                  std::invalid_argument);
}

TEST_CASE("duan variance sum is blind to a global phase") {
  const SchmidtDiagonalState s = tmsv_from_lambda(0.6);
  const SchmidtDiagonalState rotated = with_global_phase(s, 0.7);
  CHECK(std::abs(duan_variance_sum(s, 1.0) - duan_variance_sum(rotated, 1.0)) <
        1e-12);
}

TEST_CASE("high squeezing pushes the variance sum toward zero") {
  CHECK(duan_variance_sum(tmsv_from_lambda(0.99), 1.0) < 0.011);
}

TEST_CASE("entropy of entanglement") {
  const SchmidtDiagonalState s = tmsv_from_lambda(0.5);
  // Direct sum over p_n = (1-λ²)λ^{2n}.
  double direct = 0.0;
  for (int n = 0; n <= s.n_max(); ++n) {
    const double p = std::norm(s.amplitudes()(n));
    if (p > 0.0) direct -= p * std::log2(p);
  }
  CHECK(std::abs(entropy_of_entanglement(s) - direct) < 1e-12);
  // Closed form cosh²r log2 cosh²r − sinh²r log2 sinh²r.
  const double ch2 = 1.0 / (1.0 - 0.25), sh2 = 0.25 / (1.0 - 0.25);
  CHECK(std::abs(entropy_of_entanglement(s) -
                 (ch2 * std::log2(ch2) - sh2 * std::log2(sh2))) < 1e-9);

  double previous = 0.0;
  for (double lambda = 0.1; lambda < 0.95; lambda += 0.1) {
    const double e = entropy_of_entanglement(tmsv_from_lambda(lambda));
    CHECK(e > previous);
    previous = e;
  }
}

TEST_CASE("effective lambda recovers geometric decay") {
  CHECK(std::abs(effective_lambda(tmsv_from_lambda(0.5)) - 0.5) < 1e-10);
  CHECK(std::abs(effective_lambda(tmsv_from_lambda(0.9)) - 0.9) < 1e-10);
}

TEST_CASE("effective lambda degenerate inputs") {
  // Vacuum: only one usable amplitude.
  CHECK_THROWS_AS(effective_lambda(tmsv_from_lambda(0.0)), std::domain_error);
  // d_0 numerically zero.
  Eigen::VectorXcd amps(3);
  amps << 0.0, 1.0, 1e-7;
  CHECK_THROWS_AS(
      effective_lambda(SchmidtDiagonalState::from_amplitudes(amps)),
      std::domain_error);
}

TEST_CASE("from_amplitudes norm and tail contracts") {
  Eigen::VectorXcd bad(3);
  bad << 1.0, 1.0, 1e-8;
  CHECK_THROWS_AS(SchmidtDiagonalState::from_amplitudes(bad, false),
                  std::invalid_argument);
  // Renormalizing constructor accepts the same vector.
  const SchmidtDiagonalState s = SchmidtDiagonalState::from_amplitudes(bad);
  CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
  // A heavy final amplitude violates truncation adequacy.
  Eigen::VectorXcd heavy_tail(3);
  heavy_tail << 1.0, 0.5, 0.5;
  CHECK_THROWS_AS(SchmidtDiagonalState::from_amplitudes(heavy_tail),
                  std::invalid_argument);
}
