#include "pecc/homodyne.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pecc/rng.hpp"

namespace pecc {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
const double kPiQuarterRoot = std::pow(std::numbers::pi, -0.25);
const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);

void check_setting(const HomodyneSetting& setting) {
  if (!(setting.x_grid_halfwidth > 0.0))
    throw std::domain_error("HomodyneSetting: x_grid_halfwidth must be > 0");
  if (setting.grid_points < 256)
    throw std::domain_error("HomodyneSetting: grid_points must be >= 256");
  if (!std::isfinite(setting.theta))
    throw std::domain_error("HomodyneSetting: theta must be finite");
}

// Gaussian center offset of branch n relative to branch 0:
//   shift_n = √2α[cos(nφ-θ) - cos(-θ)] = 2√2 α sin(nφ/2) sin(θ - nφ/2).
// The product form avoids the catastrophic cancellation of the cosine
// difference when nφ is tiny and α is huge.
double branch_shift(double alpha, double phi, double theta, int n) {
  const double half = 0.5 * n * phi;
  return 2.0 * kSqrt2 * alpha * std::sin(half) * std::sin(theta - half);
}

// Phase of branch n relative to branch 0 under the +i m m'/2 convention:
//   ΔΦ_n = 2√2 α x cos(nφ/2-θ) sin(nφ/2) + α² cos(nφ-2θ) sin(nφ).
// Again the product form keeps relative phases accurate even when the
// absolute phases m'x + mm'/2 are ~α² and dominated by rounding.
double branch_phase_delta(double alpha, double x, double phi, double theta,
                          int n) {
  const double half = 0.5 * n * phi;
  return 2.0 * kSqrt2 * alpha * x * std::cos(half - theta) * std::sin(half) +
         alpha * alpha * std::cos(2.0 * half - 2.0 * theta) * std::sin(2.0 * half);
}

}  // namespace

double measurement_center(double alpha, double theta) {
  return kSqrt2 * alpha * std::cos(theta);
}

std::complex<double> coherent_quadrature_wavefunction(std::complex<double> mu,
                                                      double theta, double x) {
  const std::complex<double> rotated =
      mu * std::exp(std::complex<double>(0.0, -theta));
  const double m = kSqrt2 * rotated.real();
  const double mp = kSqrt2 * rotated.imag();
  const double gauss = kPiQuarterRoot * std::exp(-0.5 * (x - m) * (x - m));
  return gauss * std::exp(std::complex<double>(0.0, mp * x + 0.5 * m * mp));
}

double beta_coefficient(double alpha, double phi, double theta, double x) {
  const double u = x - measurement_center(alpha, theta);
  return kSqrt2 * alpha * phi * std::sin(theta) * u;
}

double gamma_coefficient(double alpha, double phi, double theta, double x) {
  return kSqrt2 * alpha * phi * x * std::cos(theta) +
         alpha * alpha * phi * std::cos(2.0 * theta);
}

double density_exact_at_offset(const HybridState& s, double theta, double u) {
  if (!s.schmidt.normalized())
    throw std::invalid_argument("density_exact: state is not normalized");
  const Eigen::VectorXcd& d = s.schmidt.amplitudes();
  double total = 0.0;
  for (int n = 0; n < d.size(); ++n) {
    const double w = std::norm(d[n]);
    if (w == 0.0) continue;
    const double t = u - branch_shift(s.alpha, s.phi, theta, n);
    total += w * std::exp(-t * t);
  }
  return kInvSqrtPi * total;
}

double density_exact(const HybridState& s, double theta, double x) {
  return density_exact_at_offset(s, theta, x - measurement_center(s.alpha, theta));
}

double density_closed_form(double lambda, double alpha, double phi, double theta,
                           double x, DensityVariant variant) {
  if (!(lambda >= 0.0) || lambda >= 1.0)
    throw std::domain_error("density_closed_form: lambda must lie in [0, 1)");
  const double u = x - measurement_center(alpha, theta);
  const double beta = kSqrt2 * alpha * phi * std::sin(theta) * u;
  const double lambda_prime = variant == DensityVariant::ExpBeta
                                  ? lambda * std::exp(beta)
                                  : lambda * (1.0 + beta);
  if (lambda_prime * lambda_prime >= 1.0)
    throw std::domain_error(
        "density_closed_form: resummation diverges, lambda' = " +
        std::to_string(lambda_prime));
  return std::exp(-u * u) * (1.0 - lambda * lambda) /
         (std::sqrt(std::numbers::pi) * (1.0 - lambda_prime * lambda_prime));
}

ProjectionResult project(const HybridState& s, double theta, double x) {
  if (!s.schmidt.normalized())
    throw std::invalid_argument("project: state is not normalized");
  const Eigen::VectorXcd& c = s.schmidt.amplitudes();
  const double center = measurement_center(s.alpha, theta);
  const double u = x - center;

  // Common phase of branch 0, m'_0 x + m_0 m'_0 / 2.  It multiplies every
  // amplitude, so only its value mod 2π matters.
  const double phi0 = -kSqrt2 * s.alpha * x * std::sin(theta) -
                      0.5 * s.alpha * s.alpha * std::sin(2.0 * theta);

  Eigen::VectorXcd amps(c.size());
  double norm2 = 0.0;
  for (int n = 0; n < c.size(); ++n) {
    const double t = u - branch_shift(s.alpha, s.phi, theta, n);
    const double mod = kPiQuarterRoot * std::exp(-0.5 * t * t);
    const double phase = phi0 + branch_phase_delta(s.alpha, x, s.phi, theta, n);
    amps[n] = c[n] * std::polar(mod, phase);
    norm2 += std::norm(amps[n]);
  }
  if (!(norm2 > 1e-300))
    throw std::domain_error(
        "project: density underflow at x, projection undefined");

  MeasurementOutcome outcome;
  outcome.x = x;
  outcome.density = density_exact_at_offset(s, theta, u);
  outcome.beta = beta_coefficient(s.alpha, s.phi, theta, x);
  outcome.gamma = gamma_coefficient(s.alpha, s.phi, theta, x);

  amps /= std::sqrt(norm2);
  return ProjectionResult{SchmidtDiagonalState::from_amplitudes(std::move(amps), true),
                          outcome};
}

DensityGrid build_density_grid(const HybridState& s, const HomodyneSetting& setting) {
  check_setting(setting);
  constexpr int kMaxWidenings = 6;
  constexpr double kMassTarget = 1.0 - 1e-9;
  constexpr double kMassFloor = 1.0 - 1e-6;

  DensityGrid grid;
  grid.center = measurement_center(s.alpha, setting.theta);
  double halfwidth = setting.x_grid_halfwidth;
  const int points = setting.grid_points;

  for (int attempt = 0;; ++attempt) {
    grid.u = Eigen::VectorXd::LinSpaced(points, -halfwidth, halfwidth);
    grid.rho.resize(points);
    for (int i = 0; i < points; ++i)
      grid.rho[i] = density_exact_at_offset(s, setting.theta, grid.u[i]);
    grid.cdf.resize(points);
    grid.cdf[0] = 0.0;
    for (int i = 1; i < points; ++i) {
      const double du = grid.u[i] - grid.u[i - 1];
      grid.cdf[i] = grid.cdf[i - 1] + 0.5 * (grid.rho[i] + grid.rho[i - 1]) * du;
    }
    grid.mass = grid.cdf[points - 1];
    grid.widenings = attempt;
    if (grid.mass >= kMassTarget) return grid;
    if (attempt >= kMaxWidenings) break;
    halfwidth *= 2.0;
  }
  if (grid.mass < kMassFloor)
    throw std::domain_error(
        "build_density_grid: grid too narrow, captured mass below 1 - 1e-6");
  return grid;
}

std::vector<double> sample_positions(const DensityGrid& grid, std::uint64_t seed,
                                     int n) {
  if (n < 0) throw std::domain_error("sample_positions: negative count");
  Xorshift64Star rng(seed);
  std::vector<double> xs(static_cast<std::size_t>(n));
  const int last = static_cast<int>(grid.cdf.size()) - 1;
  for (int k = 0; k < n; ++k) {
    const double target = rng.uniform() * grid.mass;
    // First index with cdf >= target, then invert the trapezoid panel.
    const double* begin = grid.cdf.data();
    int idx = static_cast<int>(
        std::lower_bound(begin, begin + last + 1, target) - begin);
    idx = std::clamp(idx, 1, last);
    const double du = grid.u[idx] - grid.u[idx - 1];
    const double rho_a = grid.rho[idx - 1];
    const double slope = (grid.rho[idx] - rho_a) / du;
    const double rem = target - grid.cdf[idx - 1];
    double xi;
    if (std::abs(slope) * du < 1e-12 * std::max(rho_a, 1e-300)) {
      xi = rho_a > 0.0 ? rem / rho_a : 0.0;
    } else {
      // Solve rho_a ξ + slope ξ²/2 = rem for ξ in [0, du].
      const double disc = rho_a * rho_a + 2.0 * slope * rem;
      xi = (std::sqrt(std::max(disc, 0.0)) - rho_a) / slope;
    }
    xs[k] = grid.center + grid.u[idx - 1] + std::clamp(xi, 0.0, du);
  }
  return xs;
}

MeasurementOutcome sample_outcome(const HybridState& s,
                                  const HomodyneSetting& setting,
                                  std::uint64_t seed) {
  const DensityGrid grid = build_density_grid(s, setting);
  const double x = sample_positions(grid, seed, 1)[0];
  MeasurementOutcome outcome;
  outcome.x = x;
  outcome.density = density_exact(s, setting.theta, x);
  outcome.beta = beta_coefficient(s.alpha, s.phi, setting.theta, x);
  outcome.gamma = gamma_coefficient(s.alpha, s.phi, setting.theta, x);
  return outcome;
}

}  // namespace pecc
