#include "pecc/records.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <stdexcept>

#include "pecc/kerr.hpp"

namespace pecc {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string opt_csv(const std::optional<double>& v) {
  return v ? format_g17(*v) : std::string();
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

void set_opt(ordered_json& j, const char* key, const std::optional<double>& v) {
  if (v)
    j[key] = *v;
  else
    j[key] = nullptr;
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunRecord build_run_record(const RunParams& p) {
  const SchmidtDiagonalState input = tmsv_from_lambda(p.lambda);
  const HybridState hybrid = apply_cross_kerr(input, p.alpha, p.phi);

  RunRecord rec;
  rec.lambda = p.lambda;
  rec.alpha = p.alpha;
  rec.phi = p.phi;
  rec.theta = p.theta;

  double x;
  if (p.x) {
    x = *p.x;
  } else {
    if (!p.seed)
      throw std::invalid_argument("build_run_record: sampling requires a seed");
    const HomodyneSetting setting{p.theta, p.grid_halfwidth, p.grid_points};
    x = sample_outcome(hybrid, setting, *p.seed).x;
    rec.seed = p.seed;
  }
  rec.x = x;

  const ProjectionResult proj = project(hybrid, p.theta, x);
  const CorrectionResult corr =
      apply_feedforward(proj.state, proj.outcome, p.alpha, p.theta);

  rec.beta = proj.outcome.beta;
  rec.gamma = proj.outcome.gamma;
  rec.density_at_x = proj.outcome.density;
  rec.lambda_prime_linear = (1.0 + rec.beta) * p.lambda;
  rec.lambda_prime_exp = p.lambda * std::exp(rec.beta);
  try {
    rec.lambda_prime_exact_fit = effective_lambda(corr.state);
  } catch (const std::domain_error&) {
    rec.lambda_prime_exact_fit.reset();  // e.g. λ=0: single usable amplitude
  }
  rec.v_in = pecc::v_in(p.lambda);
  rec.v_out_linear = v_out(p.lambda, rec.beta);
  rec.v_out_exact = duan_variance_sum(corr.state, 1.0);
  rec.entropy_in = entropy_of_entanglement(input);
  rec.entropy_out_exact = entropy_of_entanglement(corr.state);
  rec.success = success_criterion(x, p.alpha, p.theta);
  if (p.compute_ps && p.alpha > 0.0 && p.phi * std::sin(p.theta) != 0.0)
    rec.ps = success_probability(p.lambda, p.alpha, p.phi, p.theta).linear;
  rec.residual_max_phase = corr.record.residual_max_phase;
  return rec;
}

std::vector<SampleRecord> build_sample_records(const SampleParams& p) {
  if (p.samples < 1)
    throw std::invalid_argument("build_sample_records: samples must be >= 1");
  const SchmidtDiagonalState input = tmsv_from_lambda(p.lambda);
  const HybridState hybrid = apply_cross_kerr(input, p.alpha, p.phi);
  const HomodyneSetting setting{p.theta, p.grid_halfwidth, p.grid_points};
  const DensityGrid grid = build_density_grid(hybrid, setting);
  const std::vector<double> xs = sample_positions(grid, p.seed, p.samples);

  std::vector<SampleRecord> records;
  records.reserve(xs.size());
  for (int k = 0; k < static_cast<int>(xs.size()); ++k) {
    SampleRecord r;
    r.lambda = p.lambda;
    r.alpha = p.alpha;
    r.phi = p.phi;
    r.theta = p.theta;
    r.seed = p.seed;
    r.sample_index = k;
    r.x = xs[k];
    r.density = density_exact(hybrid, p.theta, r.x);
    r.beta = beta_coefficient(p.alpha, p.phi, p.theta, r.x);
    r.gamma = gamma_coefficient(p.alpha, p.phi, p.theta, r.x);
    r.success = success_criterion(r.x, p.alpha, p.theta);
    records.push_back(r);
  }
  return records;
}

std::vector<DensityRow> build_density_rows(const DensityTableParams& p) {
  if (p.grid_points < 2)
    throw std::invalid_argument("build_density_rows: need at least two points");
  if (!(p.grid_halfwidth > 0.0))
    throw std::invalid_argument("build_density_rows: halfwidth must be > 0");
  const SchmidtDiagonalState input = tmsv_from_lambda(p.lambda);
  const HybridState hybrid = apply_cross_kerr(input, p.alpha, p.phi);
  const double center = measurement_center(p.alpha, p.theta);

  std::optional<double> quoted;
  if (p.with_quoted && p.alpha * p.phi != 0.0)
    quoted = quoted_improvement_density(p.alpha, p.phi);

  std::vector<DensityRow> rows;
  rows.reserve(p.grid_points);
  for (int i = 0; i < p.grid_points; ++i) {
    const double u = -p.grid_halfwidth +
                     2.0 * p.grid_halfwidth * i / (p.grid_points - 1);
    DensityRow row;
    row.lambda = p.lambda;
    row.alpha = p.alpha;
    row.phi = p.phi;
    row.theta = p.theta;
    row.x = center + u;
    if (p.with_exact)
      row.exact = density_exact_at_offset(hybrid, p.theta, u);
    if (p.with_exp_beta) {
      try {
        row.exp_beta = density_closed_form(p.lambda, p.alpha, p.phi, p.theta,
                                           row.x, DensityVariant::ExpBeta);
      } catch (const std::domain_error&) {
        // divergence boundary of the resummation: leave the cell empty
      }
    }
    if (p.with_linear_beta) {
      try {
        row.linear_beta = density_closed_form(p.lambda, p.alpha, p.phi, p.theta,
                                              row.x, DensityVariant::LinearBeta);
      } catch (const std::domain_error&) {
      }
    }
    row.quoted = quoted;
    rows.push_back(row);
  }
  return rows;
}

FeasibilityRecord build_feasibility_record(const FeasibilityParams& p) {
  const FeasibilityQuery& q = p.query;
  FeasibilityRecord rec;
  rec.lambda = q.lambda;
  rec.nu = q.nu;
  rec.alpha = q.alpha;
  rec.phi = q.phi;
  rec.theta = q.theta;
  rec.beta_formula = beta_for_ratio(q.lambda, q.nu, BetaMethod::QuotedFormula);
  rec.beta_exact = beta_for_ratio(q.lambda, q.nu, BetaMethod::RootFind);
  rec.x_formula = x_for_improvement(q, BetaMethod::QuotedFormula);
  rec.x_exact = x_for_improvement(q, BetaMethod::RootFind);
  const ResourceCondition rc = resource_condition(q);
  rec.alpha_phi_min = rc.alpha_phi_min;
  rec.margin = rc.margin;
  const SuccessProbability sp =
      success_probability(q.lambda, q.alpha, q.phi, q.theta);
  rec.ps = sp.linear;
  rec.ps_exact = sp.exact;
  rec.ps_clamped = sp.clamped;
  if (p.paper_quoted) {
    rec.x_quoted = quoted_improvement_x(q.alpha, q.phi);
    rec.density_quoted = quoted_improvement_density(q.alpha, q.phi);
  }
  return rec;
}

std::string run_csv_header() {
  return "lambda,alpha,phi,theta,x,seed,beta,gamma,lambda_prime_linear,"
         "lambda_prime_exp,lambda_prime_exact_fit,v_in,v_out_linear,"
         "v_out_exact,entropy_in,entropy_out_exact,density_at_x,success,ps,"
         "residual_max_phase";
}

std::string run_csv_row(const RunRecord& r) {
  std::string row;
  row += format_g17(r.lambda) + ',' + format_g17(r.alpha) + ',' +
         format_g17(r.phi) + ',' + format_g17(r.theta) + ',' +
         format_g17(r.x) + ',';
  row += r.seed ? std::to_string(*r.seed) : std::string();
  row += ',' + format_g17(r.beta) + ',' + format_g17(r.gamma) + ',' +
         format_g17(r.lambda_prime_linear) + ',' +
         format_g17(r.lambda_prime_exp) + ',' +
         opt_csv(r.lambda_prime_exact_fit) + ',' + format_g17(r.v_in) + ',' +
         format_g17(r.v_out_linear) + ',' + format_g17(r.v_out_exact) + ',' +
         format_g17(r.entropy_in) + ',' + format_g17(r.entropy_out_exact) +
         ',' + format_g17(r.density_at_x) + ',' + bool_str(r.success) + ',' +
         opt_csv(r.ps) + ',' + format_g17(r.residual_max_phase);
  return row;
}

std::string sample_csv_header() {
  return "lambda,alpha,phi,theta,seed,sample_index,x,density,beta,gamma,success";
}

std::string sample_csv_row(const SampleRecord& r) {
  return format_g17(r.lambda) + ',' + format_g17(r.alpha) + ',' +
         format_g17(r.phi) + ',' + format_g17(r.theta) + ',' +
         std::to_string(r.seed) + ',' + std::to_string(r.sample_index) + ',' +
         format_g17(r.x) + ',' + format_g17(r.density) + ',' +
         format_g17(r.beta) + ',' + format_g17(r.gamma) + ',' +
         bool_str(r.success);
}

std::string density_csv_header(const DensityTableParams& p) {
  std::string header = "lambda,alpha,phi,theta,x";
  if (p.with_exact) header += ",density_exact";
  if (p.with_exp_beta) header += ",density_exp_beta";
  if (p.with_linear_beta) header += ",density_linear_beta";
  if (p.with_quoted) header += ",density_quoted";
  return header;
}

std::string density_csv_row(const DensityTableParams& p, const DensityRow& r) {
  std::string row = format_g17(r.lambda) + ',' + format_g17(r.alpha) + ',' +
                    format_g17(r.phi) + ',' + format_g17(r.theta) + ',' +
                    format_g17(r.x);
  if (p.with_exact) row += ',' + opt_csv(r.exact);
  if (p.with_exp_beta) row += ',' + opt_csv(r.exp_beta);
  if (p.with_linear_beta) row += ',' + opt_csv(r.linear_beta);
  if (p.with_quoted) row += ',' + opt_csv(r.quoted);
  return row;
}

std::string feasibility_csv_header(bool paper_quoted) {
  std::string header =
      "lambda,nu,alpha,phi,theta,beta_formula,beta_exact,x_formula,x_exact,"
      "alpha_phi_min,margin,ps,ps_exact,ps_clamped";
  if (paper_quoted) header += ",x_quoted,density_quoted";
  return header;
}

std::string feasibility_csv_row(const FeasibilityRecord& r, bool paper_quoted) {
  std::string row =
      format_g17(r.lambda) + ',' + format_g17(r.nu) + ',' +
      format_g17(r.alpha) + ',' + format_g17(r.phi) + ',' +
      format_g17(r.theta) + ',' + format_g17(r.beta_formula) + ',' +
      format_g17(r.beta_exact) + ',' + format_g17(r.x_formula) + ',' +
      format_g17(r.x_exact) + ',' + format_g17(r.alpha_phi_min) + ',' +
      format_g17(r.margin) + ',' + format_g17(r.ps) + ',' +
      format_g17(r.ps_exact) + ',' + bool_str(r.ps_clamped);
  if (paper_quoted)
    row += ',' + opt_csv(r.x_quoted) + ',' + opt_csv(r.density_quoted);
  return row;
}

std::string run_json_row(const RunRecord& r) {
  ordered_json j;
  j["lambda"] = r.lambda;
  j["alpha"] = r.alpha;
  j["phi"] = r.phi;
  j["theta"] = r.theta;
  j["x"] = r.x;
  if (r.seed)
    j["seed"] = *r.seed;
  else
    j["seed"] = nullptr;
  j["beta"] = r.beta;
  j["gamma"] = r.gamma;
  j["lambda_prime_linear"] = r.lambda_prime_linear;
  j["lambda_prime_exp"] = r.lambda_prime_exp;
  set_opt(j, "lambda_prime_exact_fit", r.lambda_prime_exact_fit);
  j["v_in"] = r.v_in;
  j["v_out_linear"] = r.v_out_linear;
  j["v_out_exact"] = r.v_out_exact;
  j["entropy_in"] = r.entropy_in;
  j["entropy_out_exact"] = r.entropy_out_exact;
  j["density_at_x"] = r.density_at_x;
  j["success"] = r.success;
  set_opt(j, "ps", r.ps);
  j["residual_max_phase"] = r.residual_max_phase;
  return j.dump();
}

std::string sample_json_row(const SampleRecord& r) {
  ordered_json j;
  j["lambda"] = r.lambda;
  j["alpha"] = r.alpha;
  j["phi"] = r.phi;
  j["theta"] = r.theta;
  j["seed"] = r.seed;
  j["sample_index"] = r.sample_index;
  j["x"] = r.x;
  j["density"] = r.density;
  j["beta"] = r.beta;
  j["gamma"] = r.gamma;
  j["success"] = r.success;
  return j.dump();
}

std::string density_json_row(const DensityTableParams& p, const DensityRow& r) {
  ordered_json j;
  j["lambda"] = r.lambda;
  j["alpha"] = r.alpha;
  j["phi"] = r.phi;
  j["theta"] = r.theta;
  j["x"] = r.x;
  if (p.with_exact) set_opt(j, "density_exact", r.exact);
  if (p.with_exp_beta) set_opt(j, "density_exp_beta", r.exp_beta);
  if (p.with_linear_beta) set_opt(j, "density_linear_beta", r.linear_beta);
  if (p.with_quoted) set_opt(j, "density_quoted", r.quoted);
  return j.dump();
}

std::string feasibility_json_row(const FeasibilityRecord& r, bool paper_quoted) {
  ordered_json j;
  j["lambda"] = r.lambda;
  j["nu"] = r.nu;
  j["alpha"] = r.alpha;
  j["phi"] = r.phi;
  j["theta"] = r.theta;
  j["beta_formula"] = r.beta_formula;
  j["beta_exact"] = r.beta_exact;
  j["x_formula"] = r.x_formula;
  j["x_exact"] = r.x_exact;
  j["alpha_phi_min"] = r.alpha_phi_min;
  j["margin"] = r.margin;
  j["ps"] = r.ps;
  j["ps_exact"] = r.ps_exact;
  j["ps_clamped"] = r.ps_clamped;
  if (paper_quoted) {
    set_opt(j, "x_quoted", r.x_quoted);
    set_opt(j, "density_quoted", r.density_quoted);
  }
  return j.dump();
}

}  // namespace pecc
