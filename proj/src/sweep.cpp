#include "pecc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <json.hpp>
#include <thread>

#include "pecc/records.hpp"
#include "pecc/rng.hpp"
#include "pecc/schmidt_state.hpp"

namespace pecc {

namespace {

using nlohmann::json;

std::vector<double> axis_values(const json& v, const std::string& name) {
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array()) {
    for (const auto& item : v) {
      if (!item.is_number())
        throw ConfigError("axis '" + name + "' must contain numbers only");
      out.push_back(item.get<double>());
    }
  } else {
    throw ConfigError("axis '" + name + "' must be a number or array");
  }
  if (out.empty()) throw ConfigError("axis '" + name + "' is empty");
  return out;
}

std::vector<std::uint64_t> axis_seeds(const json& v) {
  std::vector<std::uint64_t> out;
  if (v.is_number_unsigned() || v.is_number_integer()) {
    out.push_back(v.get<std::uint64_t>());
  } else if (v.is_array()) {
    for (const auto& item : v) {
      if (!item.is_number_integer() && !item.is_number_unsigned())
        throw ConfigError("axis 'seed' must contain integers only");
      out.push_back(item.get<std::uint64_t>());
    }
  } else {
    throw ConfigError("axis 'seed' must be an integer or array");
  }
  if (out.empty()) throw ConfigError("axis 'seed' is empty");
  return out;
}

// Flat-index decoder for the fixed axis order (lambda outermost, seed
// innermost); dims of irrelevant axes are 1.
struct AxisIndex {
  std::size_t lambda = 0, nu = 0, alpha = 0, phi = 0, theta = 0, x = 0,
              seed = 0;
};

struct AxisDims {
  std::size_t lambda = 1, nu = 1, alpha = 1, phi = 1, theta = 1, x = 1,
              seed = 1;
  std::size_t total() const {
    return lambda * nu * alpha * phi * theta * x * seed;
  }
  AxisIndex decode(std::size_t flat) const {
    AxisIndex idx;
    idx.seed = flat % seed;
    flat /= seed;
    idx.x = flat % x;
    flat /= x;
    idx.theta = flat % theta;
    flat /= theta;
    idx.phi = flat % phi;
    flat /= phi;
    idx.alpha = flat % alpha;
    flat /= alpha;
    idx.nu = flat % nu;
    flat /= nu;
    idx.lambda = flat;
    return idx;
  }
};

AxisDims dims_for(const SweepConfig& c) {
  AxisDims d;
  d.lambda = c.lambda.size();
  d.alpha = c.alpha.size();
  d.phi = c.phi.size();
  d.theta = c.theta.size();
  if (c.mode == SweepMode::Feasibility) d.nu = c.nu.size();
  if (c.mode == SweepMode::Run && !c.x.empty()) d.x = c.x.size();
  if ((c.mode == SweepMode::Run || c.mode == SweepMode::Sample) &&
      c.x.empty() && !c.seed.empty())
    d.seed = c.seed.size();
  return d;
}

struct PointPayload {
  std::string csv;                     // zero or more '\n'-terminated rows
  std::vector<std::string> json_rows;  // one compact object per row
};

}  // namespace

SweepConfig parse_sweep_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  SweepConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "mode") {
      const std::string mode = value.get<std::string>();
      if (mode == "run")
        config.mode = SweepMode::Run;
      else if (mode == "sample")
        config.mode = SweepMode::Sample;
      else if (mode == "density")
        config.mode = SweepMode::Density;
      else if (mode == "feasibility")
        config.mode = SweepMode::Feasibility;
      else
        throw ConfigError("unknown mode '" + mode + "'");
    } else if (key == "axes") {
      if (!value.is_object()) throw ConfigError("'axes' must be an object");
      for (const auto& [axis, list] : value.items()) {
        if (axis == "lambda")
          config.lambda = axis_values(list, axis);
        else if (axis == "squeezing_db") {
          if (!config.lambda.empty())
            throw ConfigError("provide either 'lambda' or 'squeezing_db', not both");
          for (double db : axis_values(list, axis))
            config.lambda.push_back(lambda_from_squeezing_db(db));
        } else if (axis == "nu")
          config.nu = axis_values(list, axis);
        else if (axis == "alpha")
          config.alpha = axis_values(list, axis);
        else if (axis == "phi")
          config.phi = axis_values(list, axis);
        else if (axis == "theta")
          config.theta = axis_values(list, axis);
        else if (axis == "x")
          config.x = axis_values(list, axis);
        else if (axis == "seed")
          config.seed = axis_seeds(list);
        else
          throw ConfigError("unknown axis '" + axis + "'");
      }
      if (value.contains("lambda") && value.contains("squeezing_db"))
        throw ConfigError("provide either 'lambda' or 'squeezing_db', not both");
    } else if (key == "format") {
      const std::string fmt = value.get<std::string>();
      if (fmt == "csv")
        config.format = OutputFormat::Csv;
      else if (fmt == "json")
        config.format = OutputFormat::Json;
      else
        throw ConfigError("unknown format '" + fmt + "'");
    } else if (key == "output") {
      config.output = value.get<std::string>();
    } else if (key == "jobs") {
      config.jobs = value.get<int>();
    } else if (key == "paper_quoted") {
      config.paper_quoted = value.get<bool>();
    } else if (key == "samples") {
      config.samples = value.get<int>();
    } else if (key == "seed") {
      config.base_seed = value.get<std::uint64_t>();
    } else if (key == "ps") {
      config.compute_ps = value.get<bool>();
    } else if (key == "fidelity") {
      if (!value.is_object()) throw ConfigError("'fidelity' must be an object");
      for (const auto& [fid, flag] : value.items()) {
        if (fid == "exact")
          config.fid_exact = flag.get<bool>();
        else if (fid == "exp_beta")
          config.fid_exp_beta = flag.get<bool>();
        else if (fid == "linear_beta")
          config.fid_linear_beta = flag.get<bool>();
        else
          throw ConfigError("unknown fidelity '" + fid + "'");
      }
    } else if (key == "grid") {
      if (!value.is_object()) throw ConfigError("'grid' must be an object");
      for (const auto& [g, gv] : value.items()) {
        if (g == "halfwidth")
          config.grid_halfwidth = gv.get<double>();
        else if (g == "points")
          config.grid_points = gv.get<int>();
        else
          throw ConfigError("unknown grid key '" + g + "'");
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return config;
}

void validate_config(const SweepConfig& config) {
  auto require_axis = [](const std::vector<double>& axis, const char* name) {
    if (axis.empty())
      throw ConfigError(std::string("missing required axis '") + name + "'");
  };
  require_axis(config.lambda, "lambda (or squeezing_db)");
  require_axis(config.alpha, "alpha");
  require_axis(config.phi, "phi");
  require_axis(config.theta, "theta");
  if (config.mode == SweepMode::Feasibility) require_axis(config.nu, "nu");
  if (config.mode == SweepMode::Run && !config.x.empty() && !config.seed.empty())
    throw ConfigError("run mode takes an x axis or seeds, not both");
  if (config.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (config.samples < 1) throw ConfigError("samples must be >= 1");
  if (config.grid_points < 2) throw ConfigError("grid points must be >= 2");
  if (!(config.grid_halfwidth > 0.0))
    throw ConfigError("grid halfwidth must be > 0");

  const double points = static_cast<double>(dims_for(config).total());
  if (points > 1e7)
    throw ConfigError("Cartesian product exceeds the 1e7-point guard");
  double rows = points;
  if (config.mode == SweepMode::Sample) rows *= config.samples;
  if (config.mode == SweepMode::Density) rows *= config.grid_points;
  if (rows > 2e7)
    throw ConfigError("sweep would emit more than 2e7 rows");
}

std::string execute_sweep(const SweepConfig& config) {
  validate_config(config);
  const AxisDims dims = dims_for(config);
  const std::size_t points = dims.total();

  DensityTableParams density_proto;
  density_proto.grid_halfwidth = config.grid_halfwidth;
  density_proto.grid_points = config.grid_points;
  density_proto.with_exact = config.fid_exact;
  density_proto.with_exp_beta = config.fid_exp_beta;
  density_proto.with_linear_beta = config.fid_linear_beta;
  density_proto.with_quoted = config.paper_quoted;

  auto compute_point = [&](std::size_t flat) {
    const AxisIndex idx = dims.decode(flat);
    PointPayload payload;
    switch (config.mode) {
      case SweepMode::Run: {
        RunParams p;
        p.lambda = config.lambda[idx.lambda];
        p.alpha = config.alpha[idx.alpha];
        p.phi = config.phi[idx.phi];
        p.theta = config.theta[idx.theta];
        p.grid_halfwidth = config.grid_halfwidth;
        p.grid_points = config.grid_points;
        p.compute_ps = config.compute_ps;
        if (!config.x.empty()) {
          p.x = config.x[idx.x];
        } else {
          p.seed = config.seed.empty()
                       ? derive_stream_seed(config.base_seed, flat)
                       : config.seed[idx.seed];
        }
        const RunRecord rec = build_run_record(p);
        payload.csv = run_csv_row(rec) + '\n';
        payload.json_rows.push_back(run_json_row(rec));
        break;
      }
      case SweepMode::Sample: {
        SampleParams p;
        p.lambda = config.lambda[idx.lambda];
        p.alpha = config.alpha[idx.alpha];
        p.phi = config.phi[idx.phi];
        p.theta = config.theta[idx.theta];
        p.seed = config.seed.empty()
                     ? derive_stream_seed(config.base_seed, flat)
                     : config.seed[idx.seed];
        p.samples = config.samples;
        p.grid_halfwidth = config.grid_halfwidth;
        p.grid_points = config.grid_points;
        for (const SampleRecord& rec : build_sample_records(p)) {
          payload.csv += sample_csv_row(rec) + '\n';
          payload.json_rows.push_back(sample_json_row(rec));
        }
        break;
      }
      case SweepMode::Density: {
        DensityTableParams p = density_proto;
        p.lambda = config.lambda[idx.lambda];
        p.alpha = config.alpha[idx.alpha];
        p.phi = config.phi[idx.phi];
        p.theta = config.theta[idx.theta];
        for (const DensityRow& row : build_density_rows(p)) {
          payload.csv += density_csv_row(p, row) + '\n';
          payload.json_rows.push_back(density_json_row(p, row));
        }
        break;
      }
      case SweepMode::Feasibility: {
        FeasibilityParams p;
        p.query.lambda = config.lambda[idx.lambda];
        p.query.nu = config.nu[idx.nu];
        p.query.alpha = config.alpha[idx.alpha];
        p.query.phi = config.phi[idx.phi];
        p.query.theta = config.theta[idx.theta];
        p.paper_quoted = config.paper_quoted;
        const FeasibilityRecord rec = build_feasibility_record(p);
        payload.csv = feasibility_csv_row(rec, config.paper_quoted) + '\n';
        payload.json_rows.push_back(
            feasibility_json_row(rec, config.paper_quoted));
        break;
      }
    }
    return payload;
  };

  std::vector<PointPayload> payloads(points);
  std::vector<std::exception_ptr> failures(points);
  const std::size_t workers = std::min<std::size_t>(
      static_cast<std::size_t>(std::max(config.jobs, 1)), points);
  if (workers <= 1) {
    for (std::size_t i = 0; i < points; ++i) payloads[i] = compute_point(i);
  } else {
    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
      for (;;) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= points) return;
        try {
          payloads[i] = compute_point(i);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < points; ++i)
      if (failures[i]) std::rethrow_exception(failures[i]);
  }

  if (config.format == OutputFormat::Csv) {
    std::string out;
    switch (config.mode) {
      case SweepMode::Run:
        out = run_csv_header();
        break;
      case SweepMode::Sample:
        out = sample_csv_header();
        break;
      case SweepMode::Density:
        out = density_csv_header(density_proto);
        break;
      case SweepMode::Feasibility:
        out = feasibility_csv_header(config.paper_quoted);
        break;
    }
    out += '\n';
    for (const PointPayload& p : payloads) out += p.csv;
    return out;
  }

  std::vector<std::string> rows;
  for (PointPayload& p : payloads)
    for (std::string& r : p.json_rows) rows.push_back(std::move(r));
  if (rows.size() == 1) return rows[0] + "\n";
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += rows[i];
    if (i + 1 < rows.size()) out += ',';
    out += '\n';
  }
  out += "]\n";
  return out;
}

}  // namespace pecc
