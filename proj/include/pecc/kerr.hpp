#pragma once

#include <complex>

#include "pecc/schmidt_state.hpp"

namespace pecc {

// State after the cross-Kerr coupling exp(-i κt n̂_b n̂_c) between mode 2 of
// the Schmidt pair and a coherent probe |α>: sum_n d_n |n,n> ⊗ |α e^{inφ}>
// with φ = -κt.  The probe branch is never expanded in a Fock basis; each
// branch keeps only its coherent label α e^{inφ}.
struct HybridState {
  SchmidtDiagonalState schmidt;
  double alpha = 0.0;  // probe amplitude, real and >= 0 by convention
  double phi = 0.0;    // per-photon phase shift

  std::complex<double> per_n_label(int n) const {
    return alpha * std::exp(std::complex<double>(0.0, n * phi));
  }
};

// Attaches the probe.  Requires a normalized Schmidt state and α >= 0 (a
// probe phase can always be absorbed into θ downstream).
HybridState apply_cross_kerr(const SchmidtDiagonalState& s, double alpha,
                             double phi);

}  // namespace pecc
