#pragma once

#include <string>
#include <vector>

#include "pecc/homodyne.hpp"

namespace pecc {

// One line of the self-check report.  info_only entries document known
// quantitative gaps (they never fail the suite).
struct ValidationCheck {
  std::string name;
  bool pass = false;
  bool info_only = false;
  double deviation = 0.0;
  std::string detail;
};

// Cross-checks the fast paths against their independent oracles: dense
// moment matrices vs. the Schmidt-diagonal Duan sum, closed-form densities
// vs. the exact branch sum, root-find back-substitution, grid normalization
// and a Kolmogorov–Smirnov test of the sampler.  Deterministic (fixed seeds).
std::vector<ValidationCheck> run_validation_suite();

// Kolmogorov–Smirnov statistic of samples against the tabulated CDF.
double ks_statistic(const DensityGrid& grid, std::vector<double> xs);

}  // namespace pecc
