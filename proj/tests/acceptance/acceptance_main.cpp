// Acceptance suite: one PASS/FAIL line per criterion, exit code 1 if any fail.

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sublinear/conditions.hpp"
#include "sublinear/errors.hpp"
#include "sublinear/exhaustion.hpp"
#include "sublinear/iteration.hpp"
#include "sublinear/poisson.hpp"
#include "sublinear/subsolution.hpp"

using namespace sublinear;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  Outcome& out;
  std::ostringstream msg;
  explicit Check(Outcome& o) : out(o) { msg.precision(6); }
  void require(bool ok, const std::string& what) {
    if (!ok) {
      out.pass = false;
      msg << "FAILED[" << what << "] ";
    }
  }
  template <class T>
  Check& note(const std::string& key, const T& value) {
    msg << key << "=" << value << " ";
    return *this;
  }
  ~Check() { out.detail = msg.str(); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Traces gathered from every solve, checked by AC6.
struct RecordedRun {
  std::string label;
  Solution solution;
};
std::vector<RecordedRun> g_runs;

const double kHalf[] = {0.5, 0.5};

SystemSpec lane_emden_square(double spacing) {
  auto grid = build_rectangle({0, 1}, {0, 1}, spacing);
  std::vector<ScalarField> lambdas(2, ScalarField::constant(grid, 1.0, true));
  return SystemSpec::create(grid, lane_emden_system(kHalf), lambdas, {{0.5, 0.5}, 0.25, 1.0});
}

SystemSpec single_equation(GridPtr grid, Nonlinearity f, std::optional<GrowthEnvelope> growth,
                           double lambda, PositivityBall ball) {
  NonlinearSystem sys;
  sys.f = {std::move(f)};
  sys.growth = std::move(growth);
  sys.lower = {{{1.0}}, {{0.5}}, 1.0};
  return SystemSpec::create(grid, std::move(sys), {ScalarField::constant(grid, lambda, true)},
                            ball);
}

Outcome ac1_barrier() {
  Outcome out;
  Check c(out);
  const auto t0 = std::chrono::steady_clock::now();
  auto grid = truncate_strip(0.5, 8.0, 1.0 / 64.0);
  const auto g = ScalarField::constant(grid, 1.0, true);
  const auto u = solve_dirichlet(grid, g, LinearSolveSettings{});
  double centre_max = 0.0;
  for (std::size_t node : grid->interior_nodes()) {
    if (std::abs(grid->coordinate(node).x) < 1e-12) centre_max = std::max(centre_max, u[node]);
  }
  const double err = std::abs(centre_max - 0.125);
  c.note("centre_max", centre_max).note("|centre_max-1/8|", err);
  c.require(err <= 1e-8, "|centre max - 0.125| <= 1e-8");
  {
    // Diagnostic only: the shortfall is the end effect of the truncation.
    auto longer = truncate_strip(0.5, 16.0, 1.0 / 64.0);
    const auto ul = solve_dirichlet(longer, ScalarField::constant(longer, 1.0, true), {});
    const auto centre = longer->node_at({0.0, 0.0});
    c.note("end_effect_model", 4.0 / std::pow(M_PI, 3) / std::cosh(4.0 * M_PI));
    if (centre) c.note("err_at_L16", std::abs(ul[*centre] - 0.125));
  }
  try {
    const auto rep = check_sup_bound(u, g, grid->slab_diameter());
    c.note("attained", rep.attained);
    c.require(rep.attained >= 0.999 && rep.attained <= 1.0 + 1e-8, "attained ratio in range");
  } catch (const std::exception& e) {
    c.require(false, std::string("check_sup_bound: ") + e.what());
  }
  const double t = seconds_since(t0);
  c.note("seconds", t);
  c.require(t < 10.0, "runtime < 10 s");
  return out;
}

Outcome ac2_max_principle() {
  Outcome out;
  Check c(out);
  const auto t0 = std::chrono::steady_clock::now();
  const double h = 1.0 / 32.0;
  std::vector<std::pair<std::string, GridPtr>> shapes = {
      {"square", build_rectangle({0, 1}, {0, 1}, h)},
      {"disk", build_masked([](Point p) { return p.x * p.x + p.y * p.y < 1.0; },
                            {{-1.1, 1.1}, {-1.1, 1.1}}, h)},
      {"strip", truncate_strip(0.5, 4.0, h)},
  };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = INFINITY;
  int cases = 0;
  for (const auto& [name, grid] : shapes) {
    PoissonSolver solver(grid, {LinearMethod::direct_sparse});
    for (int trial = 0; trial < 100; ++trial) {
      ScalarField rhs(grid);
      const int mode = trial % 4;
      for (std::size_t node : grid->interior_nodes()) {
        double v = unit(rng);
        if (mode == 1) v = v < 0.05 ? 10.0 * v : 0.0;      // sparse spikes
        if (mode == 2) v = std::pow(v, 8.0);                // mostly tiny
        if (mode == 3) v *= 1e6;                            // large scale
        rhs[node] = v;
      }
      const auto u = solver.solve(rhs);
      worst = std::min(worst, u.min() / std::max(1.0, rhs.sup_norm()));
      ++cases;
    }
  }
  const double t = seconds_since(t0);
  c.note("cases", cases).note("min_u_scaled", worst).note("seconds", t);
  c.require(worst >= -1e-10, "min nodal solution >= -1e-10");
  c.require(t < 60.0, "runtime < 60 s");
  return out;
}

Outcome ac3_certificate() {
  Outcome out;
  Check c(out);
  try {
    const auto spec = lane_emden_square(1.0 / 64.0);
    const auto cert = build_subsolution(spec, 1.0);
    const double Amin = spec.system().lower.A_min();
    const double eta_lhs = cert.C * std::pow(cert.eta, 1.0 - cert.s);
    c.note("C", cert.C).note("eta", cert.eta).note("violation", cert.max_discrete_violation);
    for (std::size_t i = 0; i < cert.chain_links.size(); ++i) {
      c.note("link" + std::to_string(i), cert.chain_links[i]);
    }
    c.require(cert.max_discrete_violation <= 1e-10, "max_discrete_violation <= 1e-10");
    for (double link : cert.chain_links) c.require(link <= 1e-10, "chain link holds nodally");
    c.require(eta_lhs <= 0.95 * spec.ball().Lambda_lower * Amin, "C eta^(1-s) <= 0.95 Lambda A");
    c.require(cert.h_sup > 0.0, "h nontrivial");
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
  return out;
}

struct LaneEmdenRun {
  std::optional<SystemSpec> spec;
  std::optional<SolveResult> result;
};

LaneEmdenRun& lane_emden_run() {
  static LaneEmdenRun run = [] {
    LaneEmdenRun r;
    r.spec.emplace(lane_emden_square(1.0 / 64.0));
    SolveOptions opts;
    opts.criteria = {1e-8, 1e-8, 500};
    r.result.emplace(solve(*r.spec, opts));
    g_runs.push_back({"lane-emden square", r.result->solution});
    return r;
  }();
  return run;
}

double symmetry_defect(const ScalarField& u) {
  const Grid& g = u.grid();
  const std::size_t m = g.nx() - 1;
  double worst = 0.0;
  for (std::size_t j = 0; j <= m; ++j) {
    for (std::size_t i = 0; i <= m; ++i) {
      const double v = u[g.index(i, j)];
      const std::size_t images[7][2] = {{m - i, j},     {i, m - j},     {m - i, m - j}, {j, i},
                                         {m - j, i},     {j, m - i},     {m - j, m - i}};
      for (const auto& im : images) worst = std::max(worst, std::abs(v - u[g.index(im[0], im[1])]));
    }
  }
  return worst;
}

Outcome ac4_monotone() {
  Outcome out;
  Check c(out);
  try {
    auto& run = lane_emden_run();
    const auto& sol = run.result->solution;
    double worst_margin = INFINITY;
    for (const auto& rec : sol.trace) {
      if (rec.k > 0) worst_margin = std::min(worst_margin, rec.monotonicity_margin);
    }
    const auto& last = sol.trace.back();
    double sym = 0.0, min_max = INFINITY;
    for (const auto& u : sol.fields) {
      sym = std::max(sym, symmetry_defect(u));
      min_max = std::min(min_max, u.max());
    }
    c.note("iterations", last.k).note("min_margin", worst_margin).note("residual", last.nonlinear_residual);
    c.note("min_max_u", min_max).note("h_sup", run.result->certificate.h_sup).note("symmetry", sym);
    c.require(sol.converged && last.k <= 200, "converged in <= 200 iterations");
    c.require(worst_margin >= -1e-9, "monotonicity margin >= -1e-9");
    c.require(min_max >= run.result->certificate.h_sup, "max u >= ||h||_inf");
    c.require(sym <= 1e-6, "8-fold symmetry within 1e-6");
    c.require(last.nonlinear_residual <= 1e-8, "nonlinear residual <= 1e-8");
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
  return out;
}

// Damped fixed point u <- u/2 + T(u)/2 from the a-priori constant, with its
// own assembly and conjugate-gradient solve.
std::vector<std::vector<double>> damped_fixed_point(const Grid& g, double start, int& iterations) {
  const auto interior = g.interior_nodes();
  const auto N = static_cast<Eigen::Index>(interior.size());
  std::vector<Eigen::Triplet<double>> trips;
  for (Eigen::Index r = 0; r < N; ++r) {
    const std::size_t node = interior[static_cast<std::size_t>(r)];
    trips.emplace_back(r, r, 4.0);
    for (std::size_t nb : g.neighbours(node)) {
      const auto k = g.unknown_index(nb);
      if (k != Grid::npos) trips.emplace_back(r, k, -1.0);
    }
  }
  Eigen::SparseMatrix<double> A(N, N);
  A.setFromTriplets(trips.begin(), trips.end());
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(1e-14);
  cg.setMaxIterations(10000);
  cg.compute(A);
  const double h2 = g.spacing() * g.spacing();

  Eigen::VectorXd u0 = Eigen::VectorXd::Constant(N, start), u1 = u0;
  for (iterations = 1; iterations <= 5000; ++iterations) {
    const Eigen::VectorXd r0 = h2 * u1.cwiseMax(0.0).cwiseSqrt();
    const Eigen::VectorXd r1 = h2 * u0.cwiseMax(0.0).cwiseSqrt();
    const Eigen::VectorXd t0 = cg.solveWithGuess(r0, u0);
    const Eigen::VectorXd t1 = cg.solveWithGuess(r1, u1);
    const Eigen::VectorXd n0 = 0.5 * (u0 + t0), n1 = 0.5 * (u1 + t1);
    const double step = std::max((n0 - u0).lpNorm<Eigen::Infinity>(), (n1 - u1).lpNorm<Eigen::Infinity>());
    u0 = n0;
    u1 = n1;
    if (step < 1e-12) break;
  }
  std::vector<std::vector<double>> fields(2, std::vector<double>(g.node_count(), 0.0));
  for (Eigen::Index r = 0; r < N; ++r) {
    fields[0][interior[static_cast<std::size_t>(r)]] = u0[r];
    fields[1][interior[static_cast<std::size_t>(r)]] = u1[r];
  }
  return fields;
}

Outcome ac5_oracle() {
  Outcome out;
  Check c(out);
  try {
    auto& run = lane_emden_run();
    const auto& ap = run.result->apriori;
    c.require(ap.has_value(), "a-priori bound available");
    if (!ap) return out;
    const double start = ap->enforced_sum;
    int iters = 0;
    const auto oracle = damped_fixed_point(run.spec->grid(), start, iters);
    double diff = 0.0;
    for (std::size_t l = 0; l < 2; ++l) {
      const auto& u = run.result->solution.fields[l];
      for (std::size_t node = 0; node < u.size(); ++node) {
        diff = std::max(diff, std::abs(u[node] - oracle[l][node]));
      }
    }
    c.note("start", start).note("oracle_iters", iters).note("sup_diff", diff);
    c.require(iters <= 5000, "oracle converged");
    c.require(diff <= 1e-5, "sup difference <= 1e-5");
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
  return out;
}

std::string check_trace(const RecordedRun& run, double& worst_chain, double& worst_bound) {
  std::string failure;
  const auto& bound = run.solution.bound;
  for (const auto& rec : run.solution.trace) {
    double sum = 0.0;
    for (double s : rec.sup_norms) {
      sum += s;
      if (rec.k > 0) {
        const double excess = s - rec.chain_bound;
        worst_chain = std::max(worst_chain, excess);
        if (excess > 1e-9 * std::max(1.0, rec.chain_bound)) {
          failure = run.label + ": chain exceeded at k=" + std::to_string(rec.k);
        }
      }
      if (bound.kind == TraceBound::Kind::fixed_point) {
        worst_bound = std::max(worst_bound, s - bound.limit);
        if (s > bound.limit + 1e-8) failure = run.label + ": fixed point bound exceeded";
      }
    }
    if (bound.kind == TraceBound::Kind::apriori_sum) {
      worst_bound = std::max(worst_bound, sum - bound.limit);
      if (sum > bound.limit + 1e-9 * std::max(1.0, bound.limit)) {
        failure = run.label + ": a-priori bound exceeded";
      }
    }
  }
  return failure;
}

Outcome ac6_apriori() {
  Outcome out;
  Check c(out);
  double worst_chain = -INFINITY, worst_bound = -INFINITY;
  std::size_t records = 0;
  for (const auto& run : g_runs) {
    records += run.solution.trace.size();
    const auto failure = check_trace(run, worst_chain, worst_bound);
    c.require(failure.empty(), failure);
    c.require(run.solution.bound.kind != TraceBound::Kind::none, run.label + ": bound enforced");
  }
  c.note("runs", g_runs.size()).note("records", records);
  c.note("max_chain_excess", worst_chain).note("max_bound_excess", worst_bound);
  c.require(g_runs.size() >= 4, "traces recorded from the other runs");
  return out;
}

Outcome ac7_discontinuous() {
  Outcome out;
  Check c(out);
  try {
    auto grid = build_rectangle({0, 1}, {0, 1}, 1.0 / 64.0);
    const PositivityBall ball{{0.5, 0.5}, 0.25, 1.0};
    const PowerTerm root{0, 1.0, 0.5};
    const auto smooth_spec = single_equation(grid, Nonlinearity(PowerSum{0.0, {root}}),
                                             GrowthEnvelope{{{1.0}}, {{0.5}}, 0.0}, 1.0, ball);
    const auto smooth = solve(smooth_spec, {});
    g_runs.push_back({"smooth single equation", smooth.solution});
    const double theta = 0.5 * smooth.solution.fields[0].max();

    const auto step_spec = single_equation(
        grid, Nonlinearity(StepSum{0.0, {root}, {Step{0, theta, 0.2, false}}}),
        GrowthEnvelope{{{1.0}}, {{0.5}}, 0.2}, 1.0, ball);
    const auto stepped = solve(step_spec, {});
    g_runs.push_back({"left-continuous step", stepped.solution});

    const auto& us = smooth.solution.fields[0];
    const auto& ud = stepped.solution.fields[0];
    double margin = INFINITY, dominance = INFINITY;
    std::size_t active = 0;
    for (const auto& rec : stepped.solution.trace) {
      if (rec.k > 0) margin = std::min(margin, rec.monotonicity_margin);
    }
    for (std::size_t node : grid->interior_nodes()) {
      if (ud[node] > theta) {
        ++active;
        dominance = std::min(dominance, ud[node] - us[node]);
      }
    }
    c.note("theta", theta).note("iterations", stepped.solution.trace.back().k);
    c.note("min_margin", margin).note("active_nodes", active).note("min_gain", dominance);
    c.require(stepped.solution.converged, "converged");
    c.require(margin >= -1e-9, "monotone trace");
    c.require(active > 0, "step active somewhere");
    c.require(active < grid->interior_count(), "step active mid-domain only");
    c.require(dominance > 0.0, "strict domination where the step is active");
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
  return out;
}

Outcome ac8_exhaustion() {
  Outcome out;
  Check c(out);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const ExhaustionPlan plan{0.5, {8.0, 16.0, 32.0}, 1.0 / 32.0};
    SystemDefinition def;
    def.system = lane_emden_system(kHalf);
    def.lambdas = {[](Point) { return 1.0; }, [](Point) { return 1.0; }};
    def.ball = {{0.0, 0.0}, 0.25, 1.0};
    const auto ex = run_exhaustion(plan, def, {});
    for (const auto& tr : ex.truncations) {
      g_runs.push_back({"exhaustion L=" + std::to_string(tr.length), tr.result.solution});
    }
    const double min_margin = *std::min_element(ex.monotone_margins.begin(), ex.monotone_margins.end());
    bool decreasing = true;
    for (std::size_t k = 1; k < ex.window_deltas.size(); ++k) {
      decreasing = decreasing && ex.window_deltas[k] < ex.window_deltas[k - 1];
    }
    double lo = INFINITY, hi = 0.0;
    for (const auto& tr : ex.truncations) {
      for (double s : tr.sup_norms) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
    }
    bool decay_ok = false;
    for (const auto& chk : ex.boundary_decay.checks) {
      if (std::abs(chk.epsilon - 0.1) < 1e-15) decay_ok = chk.pass;
    }
    std::ostringstream deltas;
    for (double d : ex.window_deltas) deltas << d << ";";
    c.note("min_margin", min_margin).note("window_deltas", deltas.str()).note("sup_spread", hi - lo);
    c.require(min_margin >= -1e-7, "cross-truncation monotonicity");
    c.require(decreasing, "window deltas strictly decrease");
    c.require(hi - lo <= 1e-3, "sup norms agree within 1e-3");
    c.require(decay_ok, "boundary decay at epsilon = 0.1");
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
  const double t = seconds_since(t0);
  c.note("seconds", t);
  c.require(t < 300.0, "runtime < 5 min");
  return out;
}

// Smallest positive fixed point of x -> 0.3 sqrt(x) e^x, recorded from a
// 1e-12 bisection oracle.
constexpr double kFixedPoint03 = 0.11276990157946;

Outcome ac9_fixed_point() {
  Outcome out;
  Check c(out);
  try {
    auto grid = truncate_strip(0.5, 4.0, 1.0 / 32.0);
    const double d = grid->slab_diameter();
    const double lambda = 0.3 * 8.0 / (d * d);
    const auto f = [](double x) { return std::sqrt(x) * std::exp(x); };

    const auto x0 = fixed_point_bound(f, lambda, d);
    c.require(x0.has_value(), "fixed point found for c lambda = 0.3");
    if (!x0) return out;
    boost::uintmax_t it = 200;
    const auto bracket = boost::math::tools::toms748_solve(
        [](double x) { return 0.3 * std::sqrt(x) * std::exp(x) - x; }, 0.05, 0.5,
        boost::math::tools::eps_tolerance<double>(50), it);
    const double oracle = 0.5 * (bracket.first + bracket.second);
    c.note("x0", *x0).note("toms748", oracle).note("regression", kFixedPoint03);
    c.require(std::abs(*x0 - kFixedPoint03) <= 2e-12, "x0 matches regression constant");
    c.require(std::abs(*x0 - oracle) <= 2e-12, "x0 matches independent root finder");

    const auto spec = single_equation(grid, Nonlinearity(PowerExp{0, 0.5, 1.0, 1.0}), std::nullopt,
                                      lambda, {{0.0, 0.0}, 0.25, lambda});
    const auto res = solve(spec, {});
    g_runs.push_back({"power_exp fixed point", res.solution});
    double worst = 0.0;
    for (const auto& rec : res.solution.trace) worst = std::max(worst, rec.sup_norms[0]);
    c.note("iterations", res.solution.trace.back().k).note("max_sup", worst);
    c.require(res.solution.converged, "converged");
    c.require(worst <= *x0 + 1e-8, "every iterate below x0 + 1e-8");

    const double big = 10.0 * 8.0 / (d * d);
    const auto scan = scan_fixed_point(f, big, d);
    c.note("scan10", scan.x0 ? "found" : "none");
    c.require(!scan.x0, "no fixed point for c lambda = 10");
    bool refused = false;
    try {
      const auto spec10 = single_equation(grid, Nonlinearity(PowerExp{0, 0.5, 1.0, 1.0}),
                                          std::nullopt, big, {{0.0, 0.0}, 0.25, big});
      (void)solve(spec10, {});
    } catch (const SpecError& e) {
      refused = std::string(e.what()).find("(a')") != std::string::npos;
    }
    c.require(refused, "solver refuses c lambda = 10");
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
  return out;
}

NonlinearSystem single(Nonlinearity f, GrowthEnvelope growth, LowerEnvelope lower) {
  NonlinearSystem s;
  s.f = {std::move(f)};
  s.growth = std::move(growth);
  s.lower = std::move(lower);
  return s;
}

Outcome ac10_calibration() {
  Outcome out;
  Check c(out);
  SamplingOptions opts;
  const LowerEnvelope root_lower{{{1.0}}, {{0.5}}, 1.0};

  // Built-ins within their documented envelopes.
  struct Case {
    std::string name;
    NonlinearSystem system;
    bool growth_applies;
  };
  std::vector<Case> builtins;
  builtins.push_back({"power_product", lane_emden_system(kHalf), true});
  builtins.push_back({"power_sum",
                      single(Nonlinearity(PowerSum{0.0, {{0, 1.0, 0.5}, {0, 0.5, 0.25}}}),
                             {{{1.5}}, {{0.5}}, 0.5}, {{{1.0}}, {{0.5}}, 1.0}),
                      true});
  builtins.push_back({"power_exp",
                      single(Nonlinearity(PowerExp{0, 0.5, 1.0, 1.0}), {{{1.0}}, {{0.5}}, 1.0},
                             root_lower),
                      false});
  builtins.push_back({"left_continuous_step",
                      single(Nonlinearity(StepSum{0.0, {{0, 1.0, 0.5}}, {Step{0, 0.3, 0.2, false}}}),
                             {{{1.0}}, {{0.5}}, 0.2}, root_lower),
                      true});
  builtins.push_back({"custom_table",
                      single(Nonlinearity(TabulatedMonotone{0, {0.0, 0.25, 1.0, 4.0, 100.0},
                                                            {0.1, 0.5, 1.0, 2.0, 10.0}}),
                             {{{1.0}}, {{0.5}}, 0.1}, {{{0.1}}, {{0.5}}, 1.0}),
                      true});
  int passes = 0;
  for (const auto& bc : builtins) {
    const auto reports = verify_all(bc.system, opts);
    for (const auto& r : reports) {
      if (r.condition == "a" && !bc.growth_applies) {
        c.require(!r.pass, bc.name + " must fail (a)");
        continue;
      }
      c.require(r.pass, bc.name + " (" + r.condition + ")");
      passes += r.pass;
    }
  }

  // Documented counterexamples.
  auto doubled = lane_emden_system(kHalf);
  for (auto& row : doubled.lower.A) {
    for (double& a : row) a *= 2.0;
  }
  const bool b_fails = !verify_lower_envelope(doubled, opts).pass;
  const auto neg = single(Nonlinearity(PowerSum{0.0, {{0, -1.0, 1.0}}}), {{{1.0}}, {{1.0}}, 0.0},
                          root_lower);
  const bool c_fails = !verify_cooperative(neg, opts).pass;
  const auto right = single(Nonlinearity(StepSum{0.0, {{0, 1.0, 0.5}}, {Step{0, 0.3, 0.2, true}}}),
                            {{{1.0}}, {{0.5}}, 0.2}, root_lower);
  const bool d_fails = !verify_continuity_from_below(right, opts).pass;
  c.require(b_fails, "A-doubled envelope fails (b)");
  c.require(c_fails, "f = -z fails (c)");
  c.require(d_fails, "right-continuous step fails (d)");
  c.note("builtin_passes", passes).note("b_fails", b_fails).note("c_fails", c_fails).note("d_fails", d_fails);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  // Optional criterion ids restrict the exit status; every criterion still
  // runs because AC6 inspects the traces of the others.
  const std::vector<std::string> selected(argv + 1, argv + argc);
  struct Criterion {
    const char* id;
    const char* title;
    Outcome (*run)();
  };
  // AC6 runs after every criterion that records a trace.
  const Criterion criteria[] = {
      {"AC1", "barrier exactness", ac1_barrier},
      {"AC2", "discrete maximum principle", ac2_max_principle},
      {"AC3", "subsolution certificate", ac3_certificate},
      {"AC4", "monotone convergence", ac4_monotone},
      {"AC5", "oracle equivalence", ac5_oracle},
      {"AC7", "discontinuous nonlinearity", ac7_discontinuous},
      {"AC8", "exhaustion", ac8_exhaustion},
      {"AC9", "fixed point path", ac9_fixed_point},
      {"AC6", "a-priori bound over all traces", ac6_apriori},
      {"AC10", "condition checker calibration", ac10_calibration},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, e.what()};
    }
    std::printf("%s %s %s: %s\n", o.pass ? "PASS" : "FAIL", cr.id, cr.title, o.detail.c_str());
    std::fflush(stdout);
    const bool counted = selected.empty() ||
                         std::find(selected.begin(), selected.end(), cr.id) != selected.end();
    failed += counted && !o.pass;
  }
  if (selected.empty()) {
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
                std::size(criteria));
  }
  return failed == 0 ? 0 : 1;
}
