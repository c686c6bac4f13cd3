#include "pecc/kerr.hpp"

#include <cmath>
#include <stdexcept>

namespace pecc {

HybridState apply_cross_kerr(const SchmidtDiagonalState& s, double alpha,
                             double phi) {
  if (!s.normalized())
    throw std::invalid_argument("apply_cross_kerr: state is not normalized");
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::domain_error("apply_cross_kerr: alpha must be finite and >= 0");
  if (!std::isfinite(phi))
    throw std::domain_error("apply_cross_kerr: phi must be finite");
  return HybridState{s, alpha, phi};
}

}  // namespace pecc
