#include "pecc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pecc/quadrature.hpp"

namespace pecc {

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;
const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);
// e^{-u²} underflows well before |u| = 30; nothing measurable lies beyond.
constexpr double kGaussCut = 30.0;

void check_lambda_open(double lambda, const char* who) {
  if (!(lambda > 0.0) || lambda >= 1.0)
    throw std::domain_error(std::string(who) + ": lambda must lie in (0, 1)");
}

void check_nu(double nu, const char* who) {
  if (!(nu > 0.0) || nu > 1.0)
    throw std::domain_error(std::string(who) + ": nu must lie in (0, 1]");
}
}  // namespace

double v_in(double lambda) {
  if (!(lambda >= 0.0) || lambda >= 1.0)
    throw std::domain_error("v_in: lambda must lie in [0, 1)");
  return 2.0 * (1.0 - lambda) / (1.0 + lambda);
}

double v_out(double lambda, double beta) {
  if (!(lambda >= 0.0) || lambda >= 1.0)
    throw std::domain_error("v_out: lambda must lie in [0, 1)");
  const double lambda_prime = (1.0 + beta) * lambda;
  if (!(lambda_prime >= 0.0) || lambda_prime >= 1.0)
    throw std::domain_error("v_out: (1+beta)*lambda outside [0, 1)");
  return 2.0 * (1.0 - lambda_prime) / (1.0 + lambda_prime);
}

bool success_criterion(double x, double alpha, double theta) {
  return x > measurement_center(alpha, theta);
}

double x_limit(double lambda, double alpha, double phi, double theta) {
  check_lambda_open(lambda, "x_limit");
  const double tilt = phi * std::sin(theta);
  if (!(tilt > 0.0))
    throw std::domain_error("x_limit: phi*sin(theta) must be > 0");
  if (!(alpha > 0.0)) throw std::domain_error("x_limit: alpha must be > 0");
  return (1.0 - lambda) / (kSqrt2 * lambda * alpha * phi * std::sin(theta)) +
         measurement_center(alpha, theta);
}

SuccessProbability success_probability(double lambda, double alpha, double phi,
                                       double theta) {
  if (!(lambda >= 0.0) || lambda >= 1.0)
    throw std::domain_error("success_probability: lambda must lie in [0, 1)");
  if (!(alpha > 0.0))
    throw std::domain_error("success_probability: alpha must be > 0");
  const double s = kSqrt2 * alpha * phi * std::sin(theta);  // dβ/du
  if (s == 0.0)
    throw std::domain_error(
        "success_probability: phi*sin(theta) = 0, no amplitude tilt");
  const double s_abs = std::abs(s);
  const double sign = s > 0.0 ? 1.0 : -1.0;  // mirror the window if needed

  // Window end in |offset| units: λ'(u) = λ(1 + s_abs u) reaches 1 at u_lim,
  // where the closed-form density has a simple pole.  Beyond kGaussCut the
  // Gaussian envelope underflows to exactly 0 in double precision, so a far
  // window end can be truncated there with no change in the result; a near
  // one is kept exact and the quadrature clamps the last panel at the pole
  // (reported via `clamped`, not an error).
  const double u_lim = lambda > 0.0
                           ? (1.0 - lambda) / (lambda * s_abs)
                           : std::numeric_limits<double>::infinity();
  SuccessProbability result;
  const double u_hi = std::min(u_lim, kGaussCut);

  const double norm = (1.0 - lambda * lambda) * kInvSqrtPi;
  auto linear_density = [&](double v) {
    const double lp = lambda * (1.0 + s_abs * v);
    const double depletion = 1.0 - lp * lp;
    // Rounding can push the last quadrature node past the pole; the window
    // is over by then.
    if (depletion <= 0.0) return 0.0;
    return std::exp(-v * v) * norm / depletion;
  };
  int clamped_panels = 0;
  result.linear =
      integrate_adaptive(linear_density, 0.0, u_hi, 1e-10, 48, &clamped_panels);
  result.clamped = clamped_panels > 0;

  const SchmidtDiagonalState input = tmsv_from_lambda(lambda);
  const HybridState hybrid = apply_cross_kerr(input, alpha, phi);
  auto exact_density = [&](double v) {
    return density_exact_at_offset(hybrid, theta, sign * v);
  };
  result.exact = integrate_adaptive(exact_density, 0.0, u_hi, 1e-10);
  return result;
}

SuccessBounds success_bounds(double lambda, double alpha, double phi,
                             double theta) {
  SuccessBounds bounds;
  bounds.x_min = measurement_center(alpha, theta);
  bounds.x_limit = x_limit(lambda, alpha, phi, theta);
  bounds.ps = success_probability(lambda, alpha, phi, theta).linear;
  return bounds;
}

double beta_for_ratio(double lambda, double nu, BetaMethod method) {
  check_lambda_open(lambda, "beta_for_ratio");
  check_nu(nu, "beta_for_ratio");
  if (method == BetaMethod::QuotedFormula) {
    return (lambda * lambda - 1.0) * (1.0 - nu) /
           (2.0 * lambda * (lambda * (nu - 1.0) - 1.0));
  }
  // Bisection of ratio(β) − ν on [0, 1/λ − 1); the ratio is strictly
  // decreasing in β, from 1 at β = 0 towards 0 at the bracket end.
  const double denom = v_in(lambda);
  auto ratio = [&](double beta) { return v_out(lambda, beta) / denom; };
  double lo = 0.0;
  double hi = (1.0 / lambda - 1.0) * (1.0 - 1e-12);
  if (ratio(hi) > nu)
    throw std::domain_error("beta_for_ratio: no root inside bracket");
  for (int i = 0; i < 200 && (hi - lo) > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (ratio(mid) >= nu)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double x_for_improvement(const FeasibilityQuery& q, BetaMethod method) {
  const double tilt = q.phi * std::sin(q.theta);
  if (!(tilt > 0.0))
    throw std::domain_error("x_for_improvement: phi*sin(theta) must be > 0");
  if (!(q.alpha > 0.0))
    throw std::domain_error("x_for_improvement: alpha must be > 0");
  const double beta = beta_for_ratio(q.lambda, q.nu, method);
  return beta / (kSqrt2 * q.alpha * q.phi * std::sin(q.theta)) +
         measurement_center(q.alpha, q.theta);
}

ResourceCondition resource_condition(const FeasibilityQuery& q) {
  check_lambda_open(q.lambda, "resource_condition");
  check_nu(q.nu, "resource_condition");
  if (!(std::sin(q.theta) > 0.0))
    throw std::domain_error("resource_condition: sin(theta) must be > 0");
  ResourceCondition rc;
  rc.alpha_phi_min = (q.lambda * q.lambda - 1.0) * (1.0 - q.nu) /
                     (2.0 * kSqrt2 * std::sin(q.theta) *
                      (q.lambda * (q.nu - 1.0) - 1.0));
  rc.margin = q.alpha * q.phi / rc.alpha_phi_min;
  return rc;
}

double quoted_improvement_x(double alpha, double phi) {
  if (alpha * phi == 0.0)
    throw std::domain_error("quoted_improvement_x: alpha*phi must be nonzero");
  return 0.03 / (alpha * phi);
}

double quoted_improvement_density(double alpha, double phi) {
  if (alpha * phi == 0.0)
    throw std::domain_error("quoted_improvement_density: alpha*phi must be nonzero");
  const double ap = alpha * phi;
  return 0.6 * std::exp(-0.0009 / (ap * ap));
}

}  // namespace pecc
