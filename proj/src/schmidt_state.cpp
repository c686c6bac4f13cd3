#include "pecc/schmidt_state.hpp"

#include <cmath>
#include <stdexcept>

namespace pecc {

namespace {
constexpr double kNormTol = 1e-12;
constexpr double kTailTol = 1e-10;
}  // namespace

SchmidtDiagonalState SchmidtDiagonalState::from_amplitudes(Eigen::VectorXcd amps,
                                                           bool renormalize) {
  if (amps.size() == 0)
    throw std::invalid_argument("SchmidtDiagonalState: empty amplitude vector");
  const double norm2 = amps.squaredNorm();
  if (!(norm2 > 0.0) || !std::isfinite(norm2))
    throw std::invalid_argument("SchmidtDiagonalState: amplitudes not normalizable");
  if (renormalize) {
    amps /= std::sqrt(norm2);
  } else if (std::abs(norm2 - 1.0) > kNormTol) {
    throw std::invalid_argument("SchmidtDiagonalState: norm differs from 1 beyond 1e-12");
  }
  const int n = static_cast<int>(amps.size()) - 1;
  const double tail = std::norm(amps[n]) / amps.squaredNorm();
  if (amps.size() > 1 && tail >= kTailTol)
    throw std::invalid_argument(
        "SchmidtDiagonalState: tail mass >= 1e-10, truncation inadequate");
  return SchmidtDiagonalState(std::move(amps), true);
}

SchmidtDiagonalState SchmidtDiagonalState::raw(Eigen::VectorXcd amps) {
  if (amps.size() == 0)
    throw std::invalid_argument("SchmidtDiagonalState: empty amplitude vector");
  return SchmidtDiagonalState(std::move(amps), false);
}

double SchmidtDiagonalState::tail_mass() const {
  return std::norm(amps_[amps_.size() - 1]) / amps_.squaredNorm();
}

SchmidtDiagonalState tmsv_from_lambda(double lambda, const TruncationPolicy& policy) {
  if (!(lambda >= 0.0) || lambda >= 1.0)
    throw std::domain_error("tmsv_from_lambda: lambda must lie in [0, 1)");
  int n_max;
  if (policy.n_max_override) {
    n_max = *policy.n_max_override;
    if (n_max < 0) throw std::domain_error("tmsv_from_lambda: negative n_max override");
  } else if (lambda == 0.0) {
    n_max = 16;
  } else {
    // |d_n|^2 = (1-λ²)λ^{2n}; the rule makes the dropped tail < 1e-12.
    const double needed = std::ceil(std::log(1e-12) / (2.0 * std::log(lambda))) + 8.0;
    n_max = std::max(16, static_cast<int>(needed));
  }
  if (n_max > policy.cap)
    throw std::domain_error(
        "tmsv_from_lambda: lambda too close to 1, required cutoff exceeds cap");
  Eigen::VectorXcd d(n_max + 1);
  const double scale = std::sqrt(1.0 - lambda * lambda);
  double ratio = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    d[n] = scale * ratio;
    ratio *= -lambda;
  }
  return SchmidtDiagonalState::from_amplitudes(std::move(d), true);
}

double lambda_from_squeezing_db(double db) {
  if (!(db >= 0.0) || !std::isfinite(db))
    throw std::domain_error("lambda_from_squeezing_db: dB must be finite and >= 0");
  const double r = db * std::log(10.0) / 20.0;
  return std::tanh(r);
}

double squeezing_db_from_lambda(double lambda) {
  if (!(lambda >= 0.0) || lambda >= 1.0)
    throw std::domain_error("squeezing_db_from_lambda: lambda must lie in [0, 1)");
  return 20.0 / std::log(10.0) * std::atanh(lambda);
}

double duan_variance_sum(const SchmidtDiagonalState& s, double a) {
  if (!s.normalized())
    throw std::invalid_argument("duan_variance_sum: state is not normalized");
  if (a == 0.0 || !std::isfinite(a))
    throw std::domain_error("duan_variance_sum: a must be finite and nonzero");
  const Eigen::VectorXcd& d = s.amplitudes();
  const int size = static_cast<int>(d.size());
  const Eigen::VectorXd p = d.cwiseAbs2();
  double mean_n = 0.0;
  for (int n = 0; n < size; ++n) mean_n += n * p[n];
  // K = <a1 a2> = sum_{n>=1} conj(d_{n-1}) d_n n; only Re K survives in the
  // x1x2 and p1p2 cross moments.
  double re_k = 0.0;
  for (int n = 1; n < size; ++n)
    re_k += n * (std::conj(d[n - 1]) * d[n]).real();
  const double aa = a * a;
  const double sign = a > 0.0 ? 1.0 : -1.0;  // |a|/a
  return (aa + 1.0 / aa) * (2.0 * mean_n + 1.0) + 4.0 * sign * re_k;
}

double entropy_of_entanglement(const SchmidtDiagonalState& s) {
  if (!s.normalized())
    throw std::invalid_argument("entropy_of_entanglement: state is not normalized");
  const Eigen::VectorXd p = s.amplitudes().cwiseAbs2();
  double h = 0.0;
  for (int n = 0; n < p.size(); ++n)
    if (p[n] > 0.0) h -= p[n] * std::log2(p[n]);
  return h;
}

double effective_lambda(const SchmidtDiagonalState& s) {
  const Eigen::VectorXcd& d = s.amplitudes();
  if (std::abs(d[0]) <= 1e-15)
    throw std::domain_error("effective_lambda: |d_0| <= 1e-15");
  // Unweighted least squares of ln|d_n| against n.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int n = 0; n < d.size(); ++n) {
    const double mag = std::abs(d[n]);
    if (mag <= 1e-12) continue;
    const double y = std::log(mag);
    sx += n;
    sy += y;
    sxx += static_cast<double>(n) * n;
    sxy += n * y;
    ++count;
  }
  if (count < 2)
    throw std::domain_error("effective_lambda: fewer than two usable amplitudes");
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0)
    throw std::domain_error("effective_lambda: degenerate fit");
  return std::exp((count * sxy - sx * sy) / denom);
}

}  // namespace pecc
