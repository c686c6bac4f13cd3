#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pecc {

// Configuration problems (bad JSON, missing axes, oversized products) are
// usage errors and carry a different exit code than numeric-domain failures.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SweepMode { Run, Sample, Density, Feasibility };
enum class OutputFormat { Csv, Json };

// A sweep is the Cartesian product of the axis lists below, iterated with
// lambda outermost and seed innermost.  Single-point commands are sweeps
// with one-element axes.
struct SweepConfig {
  SweepMode mode = SweepMode::Run;
  std::vector<double> lambda;  // already resolved from lambda or squeezing_db
  std::vector<double> nu;      // feasibility only
  std::vector<double> alpha;
  std::vector<double> phi;
  std::vector<double> theta;
  std::vector<double> x;                  // run mode; empty means "sample"
  std::vector<std::uint64_t> seed;        // explicit seeds; empty means derive
  std::uint64_t base_seed = 1;            // stream seeds derive from this
  int samples = 1;                        // draws per point in sample mode
  OutputFormat format = OutputFormat::Csv;
  std::string output;  // file path; empty writes to stdout
  int jobs = 1;
  bool paper_quoted = false;
  bool fid_exact = true;
  bool fid_exp_beta = true;
  bool fid_linear_beta = true;
  double grid_halfwidth = 8.0;
  int grid_points = 16384;
  bool compute_ps = true;
};

// Parses the JSON config document (see README for the schema).  Unknown
// keys are rejected.  Exactly one of the lambda / squeezing_db axes may be
// present; squeezing_db entries are converted to λ immediately.
SweepConfig parse_sweep_config(const std::string& json_text);

// Mode-specific axis requirements plus the 1e7 Cartesian-product guard.
void validate_config(const SweepConfig& config);

// Runs every point (optionally on `jobs` threads) and returns the complete
// output document; rows are always assembled in deterministic axis order
// regardless of thread scheduling.
std::string execute_sweep(const SweepConfig& config);

}  // namespace pecc
