#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

#include "pecc/schmidt_state.hpp"

namespace pecc {

// Brute-force cross-check for duan_variance_sum: materializes x and p as
// dense matrices on a padded single-mode Fock space, builds the two-mode
// combinations U = |a|x⊗I + (1/a)I⊗x and V = |a|p⊗I − (1/a)I⊗p with
// Kronecker products, and evaluates <U²>−<U>² + <V²>−<V>² on the state
// vector directly.  The padding keeps a†|n_max> representable so the result
// is exact for the truncated state.  Quadratic memory — intended for
// n_max ≤ 12 cross-checks only, and deliberately shares no code with the
// Schmidt-diagonal fast path.
inline double dense_duan_variance_sum(const SchmidtDiagonalState& s, double a,
                                      int pad = 4) {
  if (a == 0.0 || !std::isfinite(a))
    throw std::domain_error("dense_duan_variance_sum: a must be finite, nonzero");
  if (!s.normalized())
    throw std::invalid_argument("dense_duan_variance_sum: state not normalized");
  using Mat = Eigen::MatrixXcd;
  using Vec = Eigen::VectorXcd;
  const std::complex<double> i_unit(0.0, 1.0);

  const int dim = s.n_max() + 1 + pad;
  Mat lower = Mat::Zero(dim, dim);  // annihilation operator
  for (int k = 1; k < dim; ++k) lower(k - 1, k) = std::sqrt(double(k));
  const Mat x_op = (lower + lower.adjoint()) / std::numbers::sqrt2;
  const Mat p_op = (lower - lower.adjoint()) / (i_unit * std::numbers::sqrt2);
  const Mat eye = Mat::Identity(dim, dim);

  const double mag = std::abs(a);
  const double inv = 1.0 / a;
  const Mat u_op = mag * Eigen::kroneckerProduct(x_op, eye) +
                   inv * Eigen::kroneckerProduct(eye, x_op);
  const Mat v_op = mag * Eigen::kroneckerProduct(p_op, eye) -
                   inv * Eigen::kroneckerProduct(eye, p_op);

  Vec psi = Vec::Zero(dim * dim);
  const Eigen::VectorXcd& d = s.amplitudes();
  for (int n = 0; n < d.size(); ++n) psi[n * dim + n] = d[n];

  const Vec u_psi = u_op * psi;
  const Vec v_psi = v_op * psi;
  const double mean_u = (psi.adjoint() * u_psi).value().real();
  const double mean_v = (psi.adjoint() * v_psi).value().real();
  return u_psi.squaredNorm() - mean_u * mean_u + v_psi.squaredNorm() -
         mean_v * mean_v;
}

}  // namespace pecc
