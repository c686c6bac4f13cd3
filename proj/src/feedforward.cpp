#include "pecc/feedforward.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pecc {

namespace {
double wrap_to_pi(double angle) {
  const double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle, two_pi);
  if (a > std::numbers::pi) a -= two_pi;
  if (a < -std::numbers::pi) a += two_pi;
  return a;
}
}  // namespace

CorrectionResult apply_feedforward(const SchmidtDiagonalState& post,
                                   const MeasurementOutcome& outcome,
                                   double alpha, double theta) {
  if (!post.normalized())
    throw std::invalid_argument("apply_feedforward: state is not normalized");

  const double gamma = outcome.gamma;
  const double global = 0.5 * (alpha * alpha * std::sin(2.0 * theta) -
                               2.0 * std::numbers::sqrt2 * outcome.x * alpha *
                                   std::sin(theta));

  const Eigen::VectorXcd& d = post.amplitudes();
  Eigen::VectorXcd corrected(d.size());
  for (int n = 0; n < d.size(); ++n)
    corrected[n] =
        d[n] * std::exp(std::complex<double>(0.0, -(gamma * n + global)));

  // Residual against the alternating-sign real model, relative to the
  // lowest populated amplitude.
  double residual = 0.0;
  bool have_ref = false;
  double ref = 0.0;
  for (int n = 0; n < corrected.size(); ++n) {
    if (std::abs(corrected[n]) <= 1e-10) continue;
    const double theta_n =
        std::arg(corrected[n] * ((n % 2 == 0) ? 1.0 : -1.0));
    if (!have_ref) {
      ref = theta_n;
      have_ref = true;
      continue;
    }
    residual = std::max(residual, std::abs(wrap_to_pi(theta_n - ref)));
  }

  CorrectionRecord record{gamma, global, residual};
  return CorrectionResult{
      SchmidtDiagonalState::from_amplitudes(std::move(corrected), false), record};
}

SchmidtDiagonalState ideal_output_state(double lambda, double beta,
                                        const TruncationPolicy& policy) {
  const double lambda_prime = (1.0 + beta) * lambda;
  if (!(lambda_prime >= 0.0) || lambda_prime >= 1.0)
    throw std::domain_error(
        "ideal_output_state: (1+beta)*lambda outside [0, 1)");
  return tmsv_from_lambda(lambda_prime, policy);
}

}  // namespace pecc
