#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "pecc/analysis.hpp"
#include "pecc/records.hpp"
#include "pecc/rng.hpp"
#include "pecc/sweep.hpp"

using namespace pecc;

namespace {
constexpr double kHalfPi = 1.5707963267948966;

RunParams gentle_regime_run(double x) {
  RunParams p;
  p.lambda = 0.5;
  p.alpha = 1e4;
  p.phi = 1e-10;
  p.theta = kHalfPi;
  p.x = x;
  return p;
}

int count_commas(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == ',') ++n;
  return n;
}
}  // namespace

TEST_CASE("run record: gentle-regime outcome above the mean concentrates") {
  const RunRecord r = build_run_record(gentle_regime_run(1.0));
  CHECK(r.success);
  const double beta = beta_coefficient(1e4, 1e-10, kHalfPi, 1.0);
  CHECK(std::abs(r.beta - beta) < 1e-18);
  CHECK(std::abs(r.lambda_prime_linear - 0.5 * (1.0 + beta)) < 1e-12);
  CHECK(r.v_out_linear < r.v_in);
  CHECK(r.v_out_exact < r.v_in);
  CHECK(r.entropy_out_exact > r.entropy_in);
  CHECK_FALSE(r.seed.has_value());
  REQUIRE(r.ps.has_value());
  CHECK(std::abs(*r.ps - 0.5) < 0.01);
  CHECK(r.residual_max_phase < 1e-8);
}

TEST_CASE("run record: outcome below the mean dilutes") {
  const RunRecord r = build_run_record(gentle_regime_run(-1.0));
  CHECK_FALSE(r.success);
  CHECK(r.beta < 0.0);
  CHECK(r.v_out_linear > r.v_in);
  CHECK(r.v_out_exact > r.v_in);
}

TEST_CASE("run record: vacuum input carries no entanglement either way") {
  RunParams p = gentle_regime_run(1.0);
  p.lambda = 0.0;
  const RunRecord r = build_run_record(p);
  CHECK(r.v_in == 2.0);
  CHECK(std::abs(r.v_out_linear - 2.0) < 1e-12);
  CHECK(std::abs(r.v_out_exact - 2.0) < 1e-9);
  CHECK(r.entropy_in == 0.0);
  CHECK(r.success);  // the threshold flag is independent of the state
  CHECK_FALSE(r.lambda_prime_exact_fit.has_value());
}

TEST_CASE("run record: sampling requires a seed") {
  RunParams p = gentle_regime_run(1.0);
  p.x.reset();
  CHECK_THROWS_AS(build_run_record(p), std::invalid_argument);
  p.seed = 42;
  const RunRecord r = build_run_record(p);
  REQUIRE(r.seed.has_value());
  CHECK(*r.seed == 42);
  // Deterministic: same seed, same draw.
  CHECK(build_run_record(p).x == r.x);
}

TEST_CASE("run CSV header is frozen") {
  CHECK(run_csv_header() ==
        "lambda,alpha,phi,theta,x,seed,beta,gamma,lambda_prime_linear,"
        "lambda_prime_exp,lambda_prime_exact_fit,v_in,v_out_linear,"
        "v_out_exact,entropy_in,entropy_out_exact,density_at_x,success,ps,"
        "residual_max_phase");
}

TEST_CASE("run CSV row shape") {
  const RunRecord r = build_run_record(gentle_regime_run(1.0));
  const std::string row = run_csv_row(r);
  CHECK(count_commas(row) == count_commas(run_csv_header()));
  CHECK(row.find(",true,") != std::string::npos);
  CHECK(row.rfind("0.5,10000,1e-10,", 0) == 0);
  // x is explicit, so the seed cell is empty.
  CHECK(row.find(",1,,") != std::string::npos);
}

TEST_CASE("sample records are deterministic and self-consistent") {
  SampleParams p;
  p.lambda = 0.5;
  p.alpha = 1.5;
  p.phi = 0.01;
  p.theta = kHalfPi;
  p.seed = 7;
  p.samples = 3;
  const std::vector<SampleRecord> first = build_sample_records(p);
  const std::vector<SampleRecord> again = build_sample_records(p);
  REQUIRE(first.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(first[i].sample_index == i);
    CHECK(first[i].x == again[i].x);
    const double center = measurement_center(p.alpha, p.theta);
    CHECK(first[i].success == (first[i].x > center));
  }
  CHECK_THROWS_AS([&] {
    SampleParams bad = p;
    bad.samples = 0;
    build_sample_records(bad);
  }(), std::invalid_argument);
}

TEST_CASE("every sample row is recomputable as a run") {
  SampleParams p;
  p.lambda = 0.5;
  p.alpha = 1.5;
  p.phi = 0.01;
  p.theta = kHalfPi;
  p.seed = 99;
  p.samples = 2;
  for (const SampleRecord& s : build_sample_records(p)) {
    RunParams rp;
    rp.lambda = s.lambda;
    rp.alpha = s.alpha;
    rp.phi = s.phi;
    rp.theta = s.theta;
    rp.x = s.x;
    const RunRecord r = build_run_record(rp);
    CHECK(r.beta == s.beta);
    CHECK(r.gamma == s.gamma);
    CHECK(r.density_at_x == s.density);
    CHECK(r.success == s.success);
  }
}

TEST_CASE("density table: divergent closed-form cells are empty, exact is not") {
  DensityTableParams p;
  p.lambda = 0.5;
  p.alpha = 1.5;
  p.phi = 0.1;
  p.theta = kHalfPi;
  p.grid_halfwidth = 8.0;
  p.grid_points = 33;
  const std::vector<DensityRow> rows = build_density_rows(p);
  REQUIRE(rows.size() == 33);
  const double center = measurement_center(p.alpha, p.theta);
  CHECK(std::abs(rows.front().x - (center - 8.0)) < 1e-12);
  CHECK(std::abs(rows.back().x - (center + 8.0)) < 1e-12);
  int empty_linear = 0, empty_exp = 0;
  for (const DensityRow& row : rows) {
    CHECK(row.exact.has_value());
    if (!row.linear_beta.has_value()) ++empty_linear;
    if (!row.exp_beta.has_value()) ++empty_exp;
    CHECK_FALSE(row.quoted.has_value());
    CHECK(count_commas(density_csv_row(p, row)) ==
          count_commas(density_csv_header(p)));
  }
  // lambda' >= 1 from u ~ 4.71 (linear) and u ~ 3.27 (exp resummation).
  CHECK(empty_linear == 7);
  CHECK(empty_exp == 10);
  const std::string json = density_json_row(p, rows.back());
  CHECK(json.find("\"density_linear_beta\":null") != std::string::npos);
}

TEST_CASE("density table: quoted reference column is constant") {
  DensityTableParams p;
  p.lambda = 0.5;
  p.alpha = 1.5;
  p.phi = 0.1;
  p.theta = kHalfPi;
  p.grid_points = 9;
  p.with_quoted = true;
  const std::vector<DensityRow> rows = build_density_rows(p);
  const double expected = quoted_improvement_density(1.5, 0.1);
  for (const DensityRow& row : rows) {
    REQUIRE(row.quoted.has_value());
    CHECK(*row.quoted == expected);
  }
  CHECK(density_csv_header(p).find(",density_quoted") != std::string::npos);
}

TEST_CASE("feasibility record reproduces the worked example") {
  FeasibilityParams p;
  p.query.lambda = 0.5;
  p.query.nu = 0.9;
  p.query.alpha = 1.5;
  p.query.phi = 0.01;
  p.query.theta = kHalfPi;
  const FeasibilityRecord r = build_feasibility_record(p);
  CHECK(std::abs(r.beta_formula - 1.0 / 14.0) < 1e-12);
  CHECK(std::abs(r.beta_exact - 1.0 / 13.0) < 1e-10);
  CHECK(std::abs(r.x_formula - 3.3671751485073678) < 1e-9);
  CHECK(std::abs(r.x_exact - 3.626188621470692) < 1e-8);
  CHECK(std::abs(r.alpha_phi_min - 0.02525381361380526) < 1e-9);
  CHECK(std::abs(r.margin - 0.5939696961967001) < 1e-9);
  CHECK_FALSE(r.x_quoted.has_value());
  CHECK(feasibility_csv_header(false) ==
        "lambda,nu,alpha,phi,theta,beta_formula,beta_exact,x_formula,x_exact,"
        "alpha_phi_min,margin,ps,ps_exact,ps_clamped");

  p.paper_quoted = true;
  const FeasibilityRecord q = build_feasibility_record(p);
  REQUIRE(q.x_quoted.has_value());
  CHECK(*q.x_quoted == 2.0);
  REQUIRE(q.density_quoted.has_value());
  CHECK(std::abs(*q.density_quoted - 0.6 * std::exp(-4.0)) < 1e-15);
  CHECK(feasibility_csv_header(true).find(",x_quoted,density_quoted") !=
        std::string::npos);
}

TEST_CASE("g17 formatting round-trips doubles exactly") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.6789, -2.5e17, 0.0}) {
    const std::string text = format_g17(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
}

TEST_CASE("stream seeds are distinct and reproducible") {
  const std::uint64_t a = derive_stream_seed(1, 0);
  const std::uint64_t b = derive_stream_seed(1, 1);
  const std::uint64_t c = derive_stream_seed(1, 2);
  CHECK(a != b);
  CHECK(b != c);
  CHECK(a != c);
  CHECK(derive_stream_seed(1, 0) == a);
  Xorshift64Star rng(42), rng2(42);
  for (int i = 0; i < 10; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == rng2.uniform());
  }
}

TEST_CASE("sweep config parsing round trip") {
  const std::string doc = R"({
    "mode": "sample",
    "axes": {"lambda": [0.3, 0.5], "alpha": 1.5, "phi": 0.01,
             "theta": 1.5707963267948966},
    "samples": 4,
    "seed": 11,
    "format": "json",
    "jobs": 2,
    "grid": {"halfwidth": 6.0, "points": 4096},
    "fidelity": {"linear_beta": false},
    "ps": false
  })";
  const SweepConfig c = parse_sweep_config(doc);
  CHECK(c.mode == SweepMode::Sample);
  REQUIRE(c.lambda.size() == 2);
  CHECK(c.lambda[1] == 0.5);
  CHECK(c.alpha == std::vector<double>{1.5});
  CHECK(c.samples == 4);
  CHECK(c.base_seed == 11);
  CHECK(c.format == OutputFormat::Json);
  CHECK(c.jobs == 2);
  CHECK(c.grid_halfwidth == 6.0);
  CHECK(c.grid_points == 4096);
  CHECK_FALSE(c.fid_linear_beta);
  CHECK(c.fid_exact);
  CHECK_FALSE(c.compute_ps);
  validate_config(c);
}

TEST_CASE("sweep config rejects malformed documents") {
  CHECK_THROWS_AS(parse_sweep_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_config(R"({"mode":"warp"})"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_config(R"({"mode":"run","bogus":1})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_sweep_config(R"({"axes":{"speed":[1]}})"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_config(R"({"axes":{"lambda":[]}})"), ConfigError);
  CHECK_THROWS_AS(
      parse_sweep_config(R"({"axes":{"lambda":0.5,"squeezing_db":3.0}})"),
      ConfigError);
}

TEST_CASE("sweep validation rejects incomplete or oversized requests") {
  SweepConfig c;
  c.mode = SweepMode::Run;
  c.lambda = {0.5};
  c.alpha = {1.0};
  c.phi = {0.01};
  CHECK_THROWS_AS(validate_config(c), ConfigError);  // theta missing
  c.theta = {kHalfPi};
  c.x = {1.0};
  validate_config(c);
  c.seed = {1};
  CHECK_THROWS_AS(validate_config(c), ConfigError);  // x and seed together
  c.seed.clear();
  c.jobs = 0;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.jobs = 1;
  c.lambda.assign(4000, 0.5);
  c.x.assign(3000, 1.0);
  CHECK_THROWS_AS(validate_config(c), ConfigError);  // 1.2e7 points

  SweepConfig f;
  f.mode = SweepMode::Feasibility;
  f.lambda = {0.5};
  f.alpha = {1.0};
  f.phi = {0.01};
  f.theta = {kHalfPi};
  CHECK_THROWS_AS(validate_config(f), ConfigError);  // nu missing
  f.nu = {0.9};
  validate_config(f);
}

TEST_CASE("sweep output is independent of the worker count") {
  SweepConfig c;
  c.mode = SweepMode::Run;
  c.lambda = {0.3, 0.5, 0.7};
  c.alpha = {1.5};
  c.phi = {0.01};
  c.theta = {kHalfPi};
  c.x = {-1.0, 0.5, 1.0};
  const std::string serial = execute_sweep(c);
  c.jobs = 3;
  const std::string parallel = execute_sweep(c);
  CHECK(serial == parallel);
  // lambda is the outermost axis.
  const std::string first_row = serial.substr(serial.find('\n') + 1);
  CHECK(first_row.rfind("0.29999999999999999,", 0) == 0);
}

TEST_CASE("sweep JSON emits one object for a single run record") {
  SweepConfig c;
  c.mode = SweepMode::Run;
  c.lambda = {0.5};
  c.alpha = {1.5};
  c.phi = {0.01};
  c.theta = {kHalfPi};
  c.x = {1.0};
  c.format = OutputFormat::Json;
  const std::string single = execute_sweep(c);
  CHECK(single.front() == '{');
  c.x = {0.5, 1.0};
  const std::string many = execute_sweep(c);
  CHECK(many.front() == '[');
}
