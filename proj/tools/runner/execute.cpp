#include "runner/execute.hpp"

#include <fstream>
#include <sstream>

#include "sublinear/errors.hpp"
#include "sublinear/exhaustion.hpp"
#include "sublinear/field_io.hpp"
#include "sublinear/poisson.hpp"

namespace sublinear::runner {

using json = nlohmann::ordered_json;

namespace {

json point_json(Point p) { return json::array({p.x, p.y}); }

json grid_json(const Grid& g) {
  return {{"nx", g.nx()},
          {"ny", g.ny()},
          {"spacing", g.spacing()},
          {"origin", point_json(g.origin())},
          {"dimension", g.dimension()},
          {"interior_count", g.interior_count()},
          {"slab_diameter", g.slab_diameter()}};
}

json condition_json(const ConditionReport& c) {
  json j = {{"condition", c.condition}, {"name", c.name},       {"pass", c.pass},
            {"samples", c.samples},     {"violations", c.violations},
            {"max_violation", c.max_violation}};
  if (!c.pass) {
    j["worst_equation"] = c.worst_equation;
    j["worst_point"] = c.worst_point;
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

json certificate_json(const SubsolutionCertificate& c) {
  return {{"q", point_json(c.q)},
          {"R", c.R},
          {"s", c.s},
          {"C", c.C},
          {"eta", c.eta},
          {"delta", c.delta},
          {"phi_max", c.phi_max},
          {"h_sup", c.h_sup},
          {"halvings", c.halvings},
          {"max_discrete_violation", c.max_discrete_violation},
          {"chain_links", c.chain_links}};
}

json trace_json(const std::vector<IterationRecord>& trace) {
  json arr = json::array();
  for (const auto& r : trace) {
    arr.push_back({{"k", r.k},
                   {"sup_norms", r.sup_norms},
                   {"step_delta", r.step_delta},
                   {"monotonicity_margin", r.monotonicity_margin},
                   {"nonlinear_residual", r.nonlinear_residual},
                   {"chain_bound", r.chain_bound}});
  }
  return arr;
}

json bounds_json(const SolveResult& r, const SystemSpec& spec) {
  const double d = spec.grid().slab_diameter();
  json j = {{"d", d},
            {"c", d * d / 8.0},
            {"Lambda_lower", spec.ball().Lambda_lower},
            {"Lambda_upper", spec.Lambda_upper()}};
  if (r.apriori) {
    const auto& a = *r.apriori;
    j["apriori"] = {{"B", a.B},
                    {"p", a.p},
                    {"K", a.K},
                    {"closed_form_1_plus_S", a.closed_form_t},
                    {"x_star", a.closed_form_t - 1.0},
                    {"rigorous_1_plus_S", a.rigorous_t},
                    {"initial_sum", a.initial_sum},
                    {"enforced_sum", a.enforced_sum},
                    {"degenerate", a.degenerate}};
  }
  if (r.fixed_point) {
    const auto& f = *r.fixed_point;
    j["fixed_point"] = {{"x0", f.x0 ? json(*f.x0) : json(nullptr)},
                        {"scan", json::array({f.scan_lo, f.scan_hi})},
                        {"scan_points", f.scan_points},
                        {"bracket_width", f.bracket_width}};
  }
  double worst_sum = 0.0, worst_single = 0.0, chain_slack = 0.0;
  for (const auto& rec : r.solution.trace) {
    double sum = 0.0;
    for (double s : rec.sup_norms) {
      sum += s;
      worst_single = std::max(worst_single, s);
      if (rec.k > 0) chain_slack = std::max(chain_slack, s - rec.chain_bound);
    }
    worst_sum = std::max(worst_sum, sum);
  }
  j["trace_max_sum_sup"] = worst_sum;
  j["trace_max_sup"] = worst_single;
  j["trace_max_chain_excess"] = chain_slack;
  return j;
}

std::filesystem::path prepare_dir(const RunConfig& cfg, const ExecuteOptions& opt) {
  auto dir = opt.out_dir.value_or(cfg.output.directory);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_fields(const RunConfig& cfg, const std::filesystem::path& dir, const std::string& suffix,
                  const std::vector<ScalarField>& fields, const std::string& stem,
                  ExecuteResult& result) {
  if (cfg.output.csv) {
    for (std::size_t l = 0; l < fields.size(); ++l) {
      auto path = dir / (stem + std::to_string(l) + suffix + ".csv");
      write_csv(path, fields[l]);
      result.files.push_back(path);
    }
  }
  if (cfg.output.binary) {
    auto path = dir / (stem + suffix + ".bin");
    write_binary(path, fields);
    result.files.push_back(path);
  }
}

json files_json(const std::vector<std::filesystem::path>& files) {
  json arr = json::array();
  for (const auto& f : files) arr.push_back(f.filename().string());
  return arr;
}

bool all_required_pass(const std::vector<ConditionReport>& checks, bool growth_route,
                       std::string& failed) {
  for (const auto& c : checks) {
    if (c.condition == "a" && !growth_route) continue;
    if (!c.pass) {
      failed = "condition (" + c.condition + ") " + c.name + " check failed";
      return false;
    }
  }
  return true;
}

void run_solve(const RunConfig& cfg, const std::filesystem::path& dir, SamplingOptions sampling,
               ExecuteResult& result) {
  json& report = result.report;
  const GridPtr grid = cfg.domain.build();
  report["domain"] = grid_json(*grid);
  const SystemSpec spec = cfg.definition().instantiate(grid);

  const auto checks = verify_all(spec.system(), sampling);
  json cj = json::array();
  for (const auto& c : checks) cj.push_back(condition_json(c));
  report["conditions"] = cj;
  std::string failed;
  if (!all_required_pass(checks, spec.system().growth.has_value(), failed)) {
    throw SpecError(failed);
  }

  SolveOptions opts{.delta = cfg.delta, .criteria = cfg.criteria, .linear = cfg.linear};
  const SolveResult r = solve(spec, opts);
  report["subsolution"] = certificate_json(r.certificate);
  report["bounds"] = bounds_json(r, spec);
  const auto& sol = r.solution;
  const auto& last = sol.trace.back();
  report["iteration"] = {{"converged", sol.converged},
                         {"iterations", last.k},
                         {"final_step_delta", last.step_delta},
                         {"final_residual", last.nonlinear_residual},
                         {"final_sup_norms", last.sup_norms},
                         {"trace", trace_json(sol.trace)}};
  write_fields(cfg, dir, "", sol.fields, "u", result);
  result.exit_code = sol.converged ? kSuccess : kNotConverged;
  if (!sol.converged) result.message = "iteration did not converge within max_iters";
}

void run_check_conditions(const RunConfig& cfg, SamplingOptions sampling, ExecuteResult& result) {
  const auto checks = verify_all(cfg.system, sampling);
  json cj = json::array();
  // Without a growth envelope (a) is informational: boundedness then comes
  // from the fixed point route, as in solve.
  const bool growth_route = cfg.system.growth.has_value();
  bool ok = true;
  for (const auto& c : checks) {
    cj.push_back(condition_json(c));
    if (c.condition == "a" && !growth_route) continue;
    ok = ok && c.pass;
  }
  result.report["conditions"] = cj;
  if (!ok) {
    result.exit_code = kError;
    std::string failed;
    for (const auto& c : checks) {
      if (c.condition == "a" && !growth_route) continue;
      if (!c.pass) failed += (failed.empty() ? "" : ", ") + ("(" + c.condition + ") " + c.name);
    }
    result.message = "condition checks failed: " + failed;
    if (growth_route && !checks[0].pass) {
      result.message += "; growth condition (a) fails, consider the positive fixed point "
                        "route (a') by omitting the growth envelope";
      result.report["suggestion"] = "condition (a') positive fixed point route";
    }
  }
}

void run_poisson_test(const RunConfig& cfg, const std::filesystem::path& dir, ExecuteResult& result) {
  if (!cfg.poisson_rhs) throw std::invalid_argument("poisson-test requires a 'poisson.rhs' entry");
  const GridPtr grid = cfg.domain.build();
  result.report["domain"] = grid_json(*grid);
  const LinearSolveSettings ls = cfg.linear.value_or(LinearSolveSettings::defaults_for(*grid));
  const Expression rhs_expr = *cfg.poisson_rhs;
  const ScalarField rhs =
      ScalarField::sample(grid, [&](Point p) { return rhs_expr(p); }, true);
  const ScalarField u = solve_dirichlet(grid, rhs, ls);
  const auto bound = check_sup_bound(u, rhs, grid->slab_diameter(), ls.tolerance);
  result.report["poisson"] = {{"rhs", rhs_expr.text()},
                              {"residual_sup", residual_sup(*grid, u, rhs)},
                              {"min_u", u.min()},
                              {"max_u", u.max()},
                              {"sup_bound",
                               {{"bound", bound.bound},
                                {"attained", bound.attained},
                                {"margin", bound.margin}}}};
  write_fields(cfg, dir, "", {u}, "u", result);
}

void run_exhaust(const RunConfig& cfg, const std::filesystem::path& dir, SamplingOptions sampling,
                 ExecuteResult& result) {
  if (cfg.domain.type != DomainConfig::Type::strip) {
    throw std::invalid_argument("exhaust requires a strip domain");
  }
  ExhaustionPlan plan{.strip_halfwidth = cfg.domain.halfwidth,
                      .lengths = cfg.exhaustion_lengths,
                      .spacing = cfg.domain.spacing};
  if (plan.lengths.empty()) plan.lengths = {cfg.domain.length};

  const auto checks = verify_all(cfg.system, sampling);
  json cj = json::array();
  for (const auto& c : checks) cj.push_back(condition_json(c));
  result.report["conditions"] = cj;
  std::string failed;
  if (!all_required_pass(checks, cfg.system.growth.has_value(), failed)) throw SpecError(failed);

  SolveOptions opts{.delta = cfg.delta, .criteria = cfg.criteria, .linear = cfg.linear};
  const ExhaustionReport ex = run_exhaustion(plan, cfg.definition(), opts);
  json truncs = json::array();
  for (const auto& tr : ex.truncations) {
    std::ostringstream suffix;
    suffix << "_L" << tr.length;
    const std::size_t before = result.files.size();
    write_fields(cfg, dir, suffix.str(), tr.result.solution.fields, "u", result);
    std::vector<std::filesystem::path> mine(result.files.begin() + static_cast<std::ptrdiff_t>(before),
                                            result.files.end());
    const SystemSpec spec = cfg.definition().instantiate(tr.grid);
    truncs.push_back({{"length", tr.length},
                      {"domain", grid_json(*tr.grid)},
                      {"iterations", tr.result.solution.trace.back().k},
                      {"converged", tr.result.solution.converged},
                      {"sup_norms", tr.sup_norms},
                      {"uniform_bound", tr.uniform_bound},
                      {"end_sup", tr.end_sup},
                      {"subsolution", certificate_json(tr.result.certificate)},
                      {"bounds", bounds_json(tr.result, spec)},
                      {"files", files_json(mine)}});
  }
  json decay = json::array();
  for (const auto& c : ex.boundary_decay.checks) {
    decay.push_back({{"epsilon", c.epsilon}, {"radius", c.radius}, {"worst", c.worst}, {"pass", c.pass}});
  }
  result.report["exhaustion"] = {
      {"strip_halfwidth", plan.strip_halfwidth},
      {"lengths", plan.lengths},
      {"spacing", plan.spacing},
      {"window_halfwidth", plan.window_halfwidth()},
      {"truncations", truncs},
      {"monotone_margins", ex.monotone_margins},
      {"window_deltas", ex.window_deltas},
      {"window_cauchy", ex.window_cauchy},
      {"boundary_decay",
       {{"D", ex.boundary_decay.D},
        {"checks", decay},
        {"finest_passing_epsilon", ex.boundary_decay.finest_passing_epsilon
                                       ? json(*ex.boundary_decay.finest_passing_epsilon)
                                       : json(nullptr)}}}};
  if (!ex.window_cauchy) {
    result.exit_code = kError;
    result.message = "invariant violated (window Cauchy): window deltas are not decreasing";
  }
}

}  // namespace

ExecuteResult execute(const RunConfig& cfg, const ExecuteOptions& opt) {
  ExecuteResult result;
  json& report = result.report;
  const Command command = opt.command ? *opt.command : cfg.command.value_or(Command::solve);
  SamplingOptions sampling = cfg.sampling;
  if (opt.seed) sampling.seed = *opt.seed;

  report["command"] = std::string(to_string(command));
  report["seed"] = sampling.seed;
  report["config"] = {{"source", cfg.source_name}, {"text", cfg.source_text}};

  std::filesystem::path dir;
  try {
    if (command != Command::poisson_test && !cfg.has_system) {
      throw std::invalid_argument("command requires a 'system' section");
    }
    dir = prepare_dir(cfg, opt);
    switch (command) {
      case Command::solve: run_solve(cfg, dir, sampling, result); break;
      case Command::check_conditions: run_check_conditions(cfg, sampling, result); break;
      case Command::exhaust: run_exhaust(cfg, dir, sampling, result); break;
      case Command::poisson_test: run_poisson_test(cfg, dir, result); break;
    }
  } catch (const NotConverged& e) {
    result.exit_code = kNotConverged;
    result.message = e.what();
  } catch (const InvariantViolation& e) {
    result.exit_code = kError;
    result.message = "invariant violated (" + e.invariant() + "): " + e.what();
  } catch (const std::exception& e) {
    result.exit_code = kError;
    result.message = e.what();
  }

  report["status"] = result.exit_code == kSuccess        ? "ok"
                     : result.exit_code == kNotConverged ? "not_converged"
                                                         : "error";
  if (!result.message.empty()) report["message"] = result.message;
  report["files"] = files_json(result.files);

  if (!dir.empty()) {
    const auto report_path = dir / cfg.output.report;
    std::ofstream out(report_path, std::ios::binary);
    if (out) {
      out << report.dump(2) << '\n';
      result.files.push_back(report_path);
    } else if (result.exit_code == kSuccess) {
      result.exit_code = kError;
      result.message = "cannot write report " + report_path.string();
    }
  }
  return result;
}

ExecuteResult execute(const std::filesystem::path& config_path, const ExecuteOptions& opt) {
  try {
    return execute(load_config(config_path), opt);
  } catch (const std::exception& e) {
    ExecuteResult result;
    result.exit_code = kError;
    result.message = e.what();
    result.report = {{"status", "error"}, {"message", result.message}};
    return result;
  }
}

}  // namespace sublinear::runner
