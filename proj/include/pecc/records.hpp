#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pecc/analysis.hpp"
#include "pecc/feedforward.hpp"
#include "pecc/homodyne.hpp"

namespace pecc {

// One full protocol evaluation: source state -> cross-Kerr -> homodyne at x
// (given or sampled) -> feed-forward, plus the summary quantities derived
// from each stage.
struct RunParams {
  double lambda = 0.5;
  double alpha = 1.0;
  double phi = 0.0;
  double theta = 0.0;
  std::optional<double> x;            // absent: sample using `seed`
  std::optional<std::uint64_t> seed;  // required when x is absent
  double grid_halfwidth = 8.0;
  int grid_points = 16384;
  bool compute_ps = true;
};

struct RunRecord {
  double lambda = 0, alpha = 0, phi = 0, theta = 0, x = 0;
  std::optional<std::uint64_t> seed;
  double beta = 0, gamma = 0;
  double lambda_prime_linear = 0, lambda_prime_exp = 0;
  std::optional<double> lambda_prime_exact_fit;  // absent when unfittable (λ=0)
  double v_in = 0, v_out_linear = 0, v_out_exact = 0;
  double entropy_in = 0, entropy_out_exact = 0;
  double density_at_x = 0;
  bool success = false;
  std::optional<double> ps;  // absent when φ sinθ = 0 (no tilt)
  double residual_max_phase = 0;
};

RunRecord build_run_record(const RunParams& p);

// Sampling over one parameter point: the density grid is tabulated once and
// all draws come from the same seeded stream.
struct SampleParams {
  double lambda = 0.5;
  double alpha = 1.0;
  double phi = 0.0;
  double theta = 0.0;
  std::uint64_t seed = 1;
  int samples = 1;
  double grid_halfwidth = 8.0;
  int grid_points = 16384;
};

struct SampleRecord {
  double lambda = 0, alpha = 0, phi = 0, theta = 0;
  std::uint64_t seed = 0;
  int sample_index = 0;
  double x = 0, density = 0, beta = 0, gamma = 0;
  bool success = false;
};

std::vector<SampleRecord> build_sample_records(const SampleParams& p);

// Density table over the homodyne grid.  Closed-form cells whose
// resummation diverges (λ' >= 1) are left empty rather than aborting the
// whole table; the exact column has no such boundary.
struct DensityTableParams {
  double lambda = 0.5;
  double alpha = 1.0;
  double phi = 0.0;
  double theta = 0.0;
  double grid_halfwidth = 8.0;
  int grid_points = 16384;
  bool with_exact = true;
  bool with_exp_beta = true;
  bool with_linear_beta = true;
  bool with_quoted = false;  // constant published reference column
};

struct DensityRow {
  double lambda = 0, alpha = 0, phi = 0, theta = 0, x = 0;
  std::optional<double> exact, exp_beta, linear_beta, quoted;
};

std::vector<DensityRow> build_density_rows(const DensityTableParams& p);

// Feasibility summary for one query: both β solvers, the matching target
// outcomes, the resource bound and the success probability.
struct FeasibilityParams {
  FeasibilityQuery query;
  bool paper_quoted = false;
};

struct FeasibilityRecord {
  double lambda = 0, nu = 0, alpha = 0, phi = 0, theta = 0;
  double beta_formula = 0, beta_exact = 0;
  double x_formula = 0, x_exact = 0;
  double alpha_phi_min = 0, margin = 0;
  double ps = 0, ps_exact = 0;
  bool ps_clamped = false;
  std::optional<double> x_quoted, density_quoted;  // only with paper_quoted
};

FeasibilityRecord build_feasibility_record(const FeasibilityParams& p);

// Shared deterministic formatting: 17 significant digits, C locale, '\n'
// line endings, identical bytes for identical inputs.
std::string format_g17(double v);

std::string run_csv_header();
std::string run_csv_row(const RunRecord& r);
std::string sample_csv_header();
std::string sample_csv_row(const SampleRecord& r);
std::string density_csv_header(const DensityTableParams& p);
std::string density_csv_row(const DensityTableParams& p, const DensityRow& r);
std::string feasibility_csv_header(bool paper_quoted);
std::string feasibility_csv_row(const FeasibilityRecord& r, bool paper_quoted);

// Compact JSON objects with keys matching the CSV headers (insertion order).
std::string run_json_row(const RunRecord& r);
std::string sample_json_row(const SampleRecord& r);
std::string density_json_row(const DensityTableParams& p, const DensityRow& r);
std::string feasibility_json_row(const FeasibilityRecord& r, bool paper_quoted);

}  // namespace pecc
