#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "pecc/kerr.hpp"
#include "pecc/schmidt_state.hpp"

namespace pecc {

// Homodyne detection of the probe at quadrature angle θ.
struct HomodyneSetting {
  double theta = 0.0;
  double x_grid_halfwidth = 8.0;  // around the measurement center, in x units
  int grid_points = 16384;
};

struct MeasurementOutcome {
  double x = 0.0;        // measured quadrature value
  double density = 0.0;  // exact probability density at x
  double beta = 0.0;     // linear amplitude-tilt coefficient beta(x)
  double gamma = 0.0;    // linear phase-tilt coefficient gamma(x)
};

// Center of the measured distribution, √2 α cos θ.
double measurement_center(double alpha, double theta);

// <x_θ|μ> for a coherent label μ: with m = √2 Re(μ e^{-iθ}) and
// m' = √2 Im(μ e^{-iθ}),
//   ψ(x) = π^{-1/4} exp(-(x-m)²/2) · exp(i m' x + i m m'/2).
// The sign of the m m'/2 term fixes the per-label phase convention; it is
// chosen so that for labels α e^{inφ} the phase is linear in n with slope
// exactly gamma_coefficient(x) up to O((nφ)²) — the same γ the feed-forward
// step removes.  Moduli are independent of this choice.
std::complex<double> coherent_quadrature_wavefunction(std::complex<double> mu,
                                                      double theta, double x);

// Linearized per-photon amplitude tilt, β(x) = √2αφx sinθ − α²φ sin2θ.
// Evaluated as √2αφ sinθ · (x − center), which is the same expression
// factored so that it vanishes identically at the center.
double beta_coefficient(double alpha, double phi, double theta, double x);

// Linearized per-photon phase tilt, γ(x) = √2αφx cosθ + α²φ cos2θ.
double gamma_coefficient(double alpha, double phi, double theta, double x);

// Exact quadrature density π(x) = sum_n |d_n|² |<x_θ|α e^{inφ}>|².  The
// offset form takes u = x − center directly; the x form shifts internally.
// Both evaluate every Gaussian in shifted coordinates, so they stay accurate
// when the center √2αcosθ is many orders larger than the window of interest.
double density_exact(const HybridState& s, double theta, double x);
double density_exact_at_offset(const HybridState& s, double theta, double u);

// Closed-form linear-regime densities.  ExpBeta resums the tilt e^{βn}
// exactly; LinearBeta keeps only (1+β)-weighting:
//   π(x) ≈ e^{-u²} (1-λ²) / (√π (1 - λ'²)),  λ' = λe^β  or  λ(1+β).
// Requires λ'² < 1, otherwise the resummation diverges and this throws.
enum class DensityVariant { ExpBeta, LinearBeta };
double density_closed_form(double lambda, double alpha, double phi, double theta,
                           double x, DensityVariant variant);

// Conditional Schmidt state after measuring x, with the full complex
// amplitudes d_n ∝ c_n <x_θ|α e^{inφ}> (phases retained, nothing stripped).
struct ProjectionResult {
  SchmidtDiagonalState state;
  MeasurementOutcome outcome;
};
ProjectionResult project(const HybridState& s, double theta, double x);

// Tabulated density with trapezoid CDF for inverse-transform sampling.  The
// window starts at ±x_grid_halfwidth around the center and doubles until it
// holds all but 1e-9 of the mass; if even a 64x widening leaves more than
// 1e-6 outside, the grid is reported unusable.
struct DensityGrid {
  double center = 0.0;
  Eigen::VectorXd u;    // offsets from center
  Eigen::VectorXd rho;  // density at center + u
  Eigen::VectorXd cdf;  // trapezoid cumulative, cdf[0] = 0
  double mass = 0.0;
  int widenings = 0;
};
DensityGrid build_density_grid(const HybridState& s, const HomodyneSetting& setting);

// n absolute x positions drawn by inverting the tabulated CDF with the
// fixed xorshift64* stream for `seed` (deterministic per seed).
std::vector<double> sample_positions(const DensityGrid& grid, std::uint64_t seed,
                                     int n);

// One seeded outcome: draws x, then evaluates density/β/γ at that x.
MeasurementOutcome sample_outcome(const HybridState& s,
                                  const HomodyneSetting& setting,
                                  std::uint64_t seed);

}  // namespace pecc
