#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

namespace pecc {

// Quadrature convention used throughout: x = (a + a†)/√2, p = (a − a†)/(i√2),
// so the vacuum has Var(x) = Var(p) = 1/2 and the two-mode separability bound
// for |a|x1 + x2/a, |a|p1 − p2/a sits at a² + 1/a².

struct TruncationPolicy {
  int cap = 4096;                      // hard ceiling on the Fock cutoff
  std::optional<int> n_max_override;   // fixed n_max instead of the tail rule
};

// Two-mode state of Schmidt-diagonal form sum_n d_n |n,n>, stored as the
// amplitude vector d.  All states the protocol touches stay in this form, so
// memory is O(n_max) rather than O(n_max^2).
class SchmidtDiagonalState {
 public:
  // Builds a state from amplitudes.  With renormalize=true the vector is
  // scaled to unit norm; with renormalize=false the norm must already be 1
  // within 1e-12.  Either way the relative tail mass |d_nmax|^2 / sum|d_n|^2
  // must be < 1e-10 (truncation adequacy), or the constructor throws.
  static SchmidtDiagonalState from_amplitudes(Eigen::VectorXcd amps,
                                              bool renormalize = true);

  // Unnormalized container (normalized() == false).  Measures reject these.
  static SchmidtDiagonalState raw(Eigen::VectorXcd amps);

  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  int n_max() const { return static_cast<int>(amps_.size()) - 1; }
  bool normalized() const { return normalized_; }
  double norm_squared() const { return amps_.squaredNorm(); }
  double tail_mass() const;  // |d_nmax|^2 / sum|d_n|^2

 private:
  SchmidtDiagonalState(Eigen::VectorXcd amps, bool normalized)
      : amps_(std::move(amps)), normalized_(normalized) {}
  Eigen::VectorXcd amps_;
  bool normalized_;
};

// Two-mode squeezed vacuum, d_n = sqrt(1-λ²)(-λ)^n, 0 ≤ λ < 1.  The cutoff
// is n_max = max(16, ceil(ln 1e-12 / (2 ln λ)) + 8) unless overridden; if
// that exceeds policy.cap the state is not representable and this throws.
SchmidtDiagonalState tmsv_from_lambda(double lambda,
                                      const TruncationPolicy& policy = {});

// Squeezing strength in dB <-> λ = tanh r, with dB = (20/ln 10)·artanh λ.
double lambda_from_squeezing_db(double db);
double squeezing_db_from_lambda(double lambda);

// Sum of the Duan combination variances <ΔU²> + <ΔV²> for
// U = |a|x1 + x2/a, V = |a|p1 − p2/a.  Evaluated from operator moments of
// the Schmidt-diagonal amplitudes (valid for every a ≠ 0, not just a = ±1):
// first moments vanish, <xi²> = <pi²> = <n> + 1/2 per mode, and the cross
// moments reduce to Re sum_n conj(d_{n-1}) d_n n.
double duan_variance_sum(const SchmidtDiagonalState& s, double a);

// Entropy of entanglement, −sum p_n log2 p_n with p_n = |d_n|².
double entropy_of_entanglement(const SchmidtDiagonalState& s);

// Geometric-decay parameter fitted by least squares on (n, ln|d_n|) over the
// amplitudes with |d_n| > 1e-12; returns exp(slope).  Needs at least two
// usable amplitudes and |d_0| > 1e-15.
double effective_lambda(const SchmidtDiagonalState& s);

}  // namespace pecc
