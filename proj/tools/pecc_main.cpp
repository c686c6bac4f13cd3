// Command-line front end: single-shot runs, Monte Carlo sampling, density
// tables, feasibility reports, config-driven sweeps, and the self-check
// suite.  All numeric output goes through the deterministic serializers in
// records.cpp, so identical inputs give byte-identical files.
//
// Exit codes: 0 success, 2 bad usage/config, 3 numeric-domain error,
// 4 self-check failure.

#include <cstdio>
#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pecc/schmidt_state.hpp"
#include "pecc/sweep.hpp"
#include "pecc/validation.hpp"

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kDegToRad = 0.017453292519943295;

// Flags shared by every physics subcommand.  One instance per subcommand so
// values never leak between them.
struct StateFlags {
  double lambda = 0.5;
  double squeezing_db = 0.0;
  double alpha = 1.0;
  double phi = 0.0;
  double theta = kHalfPi;
  double theta_deg = 90.0;
  CLI::Option* lambda_opt = nullptr;
  CLI::Option* db_opt = nullptr;
  CLI::Option* theta_opt = nullptr;
  CLI::Option* theta_deg_opt = nullptr;

  double resolved_lambda() const {
    return db_opt->count() ? pecc::lambda_from_squeezing_db(squeezing_db)
                           : lambda;
  }
  double resolved_theta() const {
    return theta_deg_opt->count() ? theta_deg * kDegToRad : theta;
  }
};

StateFlags& add_state_flags(CLI::App* cmd, std::deque<StateFlags>& store) {
  StateFlags& f = store.emplace_back();
  f.lambda_opt =
      cmd->add_option("--lambda", f.lambda, "Schmidt parameter in [0,1)");
  f.db_opt = cmd->add_option("--squeezing-db", f.squeezing_db,
                             "squeezing in dB (alternative to --lambda)");
  f.lambda_opt->excludes(f.db_opt);
  f.db_opt->excludes(f.lambda_opt);
  cmd->add_option("--alpha", f.alpha, "probe amplitude (>= 0)")->required();
  cmd->add_option("--phi", f.phi, "cross-Kerr phase per photon (radians)")
      ->required();
  f.theta_opt =
      cmd->add_option("--theta", f.theta, "homodyne angle in radians");
  f.theta_deg_opt = cmd->add_option("--theta-deg", f.theta_deg,
                                    "homodyne angle in degrees");
  f.theta_opt->excludes(f.theta_deg_opt);
  f.theta_deg_opt->excludes(f.theta_opt);
  return f;
}

void require_lambda(const StateFlags& f) {
  if (!f.lambda_opt->count() && !f.db_opt->count())
    throw pecc::ConfigError("provide --lambda or --squeezing-db");
}

pecc::OutputFormat parse_format(const std::string& name) {
  return name == "json" ? pecc::OutputFormat::Json : pecc::OutputFormat::Csv;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pecc::ConfigError("cannot open output file '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

int run_validate() {
  const std::vector<pecc::ValidationCheck> checks =
      pecc::run_validation_suite();
  bool failed = false;
  for (const auto& c : checks) {
    const char* tag = c.info_only ? "INFO" : (c.pass ? "PASS" : "FAIL");
    std::printf("[%s] %-24s deviation=%.3e  %s\n", tag, c.name.c_str(),
                c.deviation, c.detail.c_str());
    if (!c.pass && !c.info_only) failed = true;
  }
  std::printf("%s\n", failed ? "self-check FAILED" : "self-check passed");
  return failed ? 4 : 0;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const pecc::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Procrustean entanglement concentration toolkit"};
  app.require_subcommand(1);
  std::deque<StateFlags> flag_store;

  // ---- run ---------------------------------------------------------------
  CLI::App* run = app.add_subcommand(
      "run", "full pipeline at one parameter point (one output record)");
  StateFlags& run_flags = add_state_flags(run, flag_store);
  double run_x = 0.0;
  bool run_sample = false;
  std::uint64_t run_seed = 0;
  CLI::Option* run_x_opt =
      run->add_option("--x", run_x, "measured quadrature value");
  CLI::Option* run_sample_opt = run->add_flag(
      "--sample", run_sample, "draw x from the outcome density instead");
  CLI::Option* run_seed_opt =
      run->add_option("--seed", run_seed, "RNG seed for --sample");
  run_x_opt->excludes(run_sample_opt);
  run_sample_opt->needs(run_seed_opt);
  std::string run_format = "csv", run_out;
  run->add_option("--format", run_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--out", run_out, "output file (default: stdout)");
  bool run_no_ps = false;
  run->add_flag("--no-ps", run_no_ps, "skip the success-probability column");

  // ---- sample ------------------------------------------------------------
  CLI::App* sample = app.add_subcommand(
      "sample", "seeded Monte Carlo draws from the outcome density");
  StateFlags& sample_flags = add_state_flags(sample, flag_store);
  std::uint64_t sample_seed = 0;
  int sample_count = 1;
  sample->add_option("--seed", sample_seed, "RNG seed")->required();
  sample->add_option("--samples", sample_count, "number of draws")
      ->check(CLI::PositiveNumber);
  std::string sample_format = "csv", sample_out;
  sample->add_option("--format", sample_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sample->add_option("--out", sample_out, "output file (default: stdout)");

  // ---- density -----------------------------------------------------------
  CLI::App* density = app.add_subcommand(
      "density", "tabulate the outcome probability density on a grid");
  StateFlags& density_flags = add_state_flags(density, flag_store);
  int density_points = 512;
  double density_halfwidth = 8.0;
  density->add_option("--grid-points", density_points, "rows in the table")
      ->check(CLI::Range(2, 10000000));
  density->add_option("--halfwidth", density_halfwidth,
                      "half-width of the x window around the mean");
  bool density_quoted = false;
  density->add_flag("--paper-quoted", density_quoted,
                    "append the published quoted-scenario column "
                    "(density_quoted)");
  std::string density_format = "csv", density_out;
  density->add_option("--format", density_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  density->add_option("--out", density_out, "output file (default: stdout)");

  // ---- feasibility -------------------------------------------------------
  CLI::App* feas = app.add_subcommand(
      "feasibility", "resource requirements for a target improvement ratio");
  StateFlags& feas_flags = add_state_flags(feas, flag_store);
  double feas_nu = 0.9;
  feas->add_option("--nu", feas_nu, "target ratio V_out/V_in in (0,1]")
      ->required();
  bool feas_quoted = false;
  feas->add_flag("--paper-quoted", feas_quoted,
                 "append the published quoted-scenario columns "
                 "(x_quoted, density_quoted)");
  std::string feas_format = "csv", feas_out;
  feas->add_option("--format", feas_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  feas->add_option("--out", feas_out, "output file (default: stdout)");

  // ---- sweep -------------------------------------------------------------
  CLI::App* sweep =
      app.add_subcommand("sweep", "run a Cartesian sweep from a JSON config");
  std::string sweep_config_path;
  sweep->add_option("--config", sweep_config_path, "JSON config file")
      ->required();
  int sweep_jobs = 0;
  std::string sweep_format, sweep_out;
  CLI::Option* sweep_jobs_opt =
      sweep->add_option("--jobs", sweep_jobs, "worker threads (overrides "
                        "config)")
          ->check(CLI::PositiveNumber);
  CLI::Option* sweep_format_opt =
      sweep->add_option("--format", sweep_format, "csv or json (overrides "
                        "config)")
          ->check(CLI::IsMember({"csv", "json"}));
  CLI::Option* sweep_out_opt = sweep->add_option(
      "--out", sweep_out, "output file (overrides config)");
  bool sweep_quoted = false;
  CLI::Option* sweep_quoted_opt =
      sweep->add_flag("--paper-quoted", sweep_quoted,
                      "append the published quoted-scenario columns");

  // ---- validate ----------------------------------------------------------
  app.add_subcommand("validate",
                     "run the built-in oracle suite and report deviations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (app.got_subcommand("validate")) return guarded(run_validate);

  if (app.got_subcommand("run")) {
    return guarded([&] {
      require_lambda(run_flags);
      if (!run_x_opt->count() && !run_sample_opt->count())
        throw pecc::ConfigError("run needs --x or --sample with --seed");
      pecc::SweepConfig config;
      config.mode = pecc::SweepMode::Run;
      config.lambda = {run_flags.resolved_lambda()};
      config.alpha = {run_flags.alpha};
      config.phi = {run_flags.phi};
      config.theta = {run_flags.resolved_theta()};
      if (run_x_opt->count())
        config.x = {run_x};
      else
        config.seed = {run_seed};
      config.format = parse_format(run_format);
      config.compute_ps = !run_no_ps;
      write_output(run_out, pecc::execute_sweep(config));
      return 0;
    });
  }

  if (app.got_subcommand("sample")) {
    return guarded([&] {
      require_lambda(sample_flags);
      pecc::SweepConfig config;
      config.mode = pecc::SweepMode::Sample;
      config.lambda = {sample_flags.resolved_lambda()};
      config.alpha = {sample_flags.alpha};
      config.phi = {sample_flags.phi};
      config.theta = {sample_flags.resolved_theta()};
      config.seed = {sample_seed};
      config.samples = sample_count;
      config.format = parse_format(sample_format);
      write_output(sample_out, pecc::execute_sweep(config));
      return 0;
    });
  }

  if (app.got_subcommand("density")) {
    return guarded([&] {
      require_lambda(density_flags);
      pecc::SweepConfig config;
      config.mode = pecc::SweepMode::Density;
      config.lambda = {density_flags.resolved_lambda()};
      config.alpha = {density_flags.alpha};
      config.phi = {density_flags.phi};
      config.theta = {density_flags.resolved_theta()};
      config.grid_points = density_points;
      config.grid_halfwidth = density_halfwidth;
      config.paper_quoted = density_quoted;
      config.format = parse_format(density_format);
      write_output(density_out, pecc::execute_sweep(config));
      return 0;
    });
  }

  if (app.got_subcommand("feasibility")) {
    return guarded([&] {
      require_lambda(feas_flags);
      pecc::SweepConfig config;
      config.mode = pecc::SweepMode::Feasibility;
      config.lambda = {feas_flags.resolved_lambda()};
      config.nu = {feas_nu};
      config.alpha = {feas_flags.alpha};
      config.phi = {feas_flags.phi};
      config.theta = {feas_flags.resolved_theta()};
      config.paper_quoted = feas_quoted;
      config.format = parse_format(feas_format);
      write_output(feas_out, pecc::execute_sweep(config));
      return 0;
    });
  }

  // sweep
  return guarded([&] {
    std::ifstream in(sweep_config_path, std::ios::binary);
    if (!in)
      throw pecc::ConfigError("cannot read config file '" + sweep_config_path +
                              "'");
    std::ostringstream text;
    text << in.rdbuf();
    pecc::SweepConfig config = pecc::parse_sweep_config(text.str());
    if (sweep_jobs_opt->count()) config.jobs = sweep_jobs;
    if (sweep_format_opt->count()) config.format = parse_format(sweep_format);
    if (sweep_out_opt->count()) config.output = sweep_out;
    if (sweep_quoted_opt->count()) config.paper_quoted = sweep_quoted;
    write_output(config.output, pecc::execute_sweep(config));
    return 0;
  });
}
