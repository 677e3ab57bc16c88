#include "sublinear/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sublinear/errors.hpp"

namespace sublinear {

void StoppingCriteria::validate(double tau_lin) const {
  if (!(tol_step >= 100.0 * tau_lin)) {
    throw std::invalid_argument("tol_step must be at least 100 * linear tolerance");
  }
  if (!(tol_residual >= 100.0 * tau_lin)) {
    throw std::invalid_argument("tol_residual must be at least 100 * linear tolerance");
  }
  if (max_iters <= 0) throw std::invalid_argument("max_iters must be positive");
}

AprioriBound apriori_bound(const GrowthEnvelope& growth, std::size_t n_plus_1, double Lambda_upper,
                           double slab_diameter, double initial_sum) {
  AprioriBound b;
  b.c = slab_diameter * slab_diameter / 8.0;
  b.B = std::max(growth.max_C(), growth.A);
  b.p = growth.max_p();
  if (!(b.p > 0.0 && b.p < 1.0)) throw SpecError("condition (a) requires 0 < p_{l,j} < 1");
  b.K = 2.0 * static_cast<double>(n_plus_1) * b.c * Lambda_upper * b.B;
  const double e = 1.0 / (1.0 - b.p);
  b.closed_form_t = std::pow(b.K, e);
  b.rigorous_t = std::pow(1.0 + b.K, e);
  b.initial_sum = initial_sum;
  b.enforced_sum = std::max(b.rigorous_t - 1.0, initial_sum);
  b.degenerate = b.closed_form_t - 1.0 < initial_sum;
  return b;
}

FixedPointScan scan_fixed_point(const std::function<double(double)>& f, double lambda_const,
                                double slab_diameter, double x_max) {
  constexpr double kLo = 1e-12;
  constexpr std::size_t kPoints = 4000;
  constexpr double kBracket = 1e-12;
  FixedPointScan scan{.scan_lo = kLo, .scan_hi = x_max, .scan_points = kPoints};
  const double scale = slab_diameter * slab_diameter / 8.0 * lambda_const;
  auto gap = [&](double x) { return scale * f(x) - x; };

  const double ratio = std::pow(x_max / kLo, 1.0 / static_cast<double>(kPoints - 1));
  double a = kLo;
  double ga = gap(a);
  if (ga == 0.0) {
    scan.x0 = a;
    return scan;
  }
  for (std::size_t i = 1; i < kPoints; ++i) {
    const double b = i + 1 == kPoints ? x_max : kLo * std::pow(ratio, static_cast<double>(i));
    const double gb = gap(b);
    if (gb == 0.0) {
      scan.x0 = b;
      return scan;
    }
    if ((ga > 0.0) != (gb > 0.0)) {
      double lo = a, hi = b;
      const bool lo_above = ga > 0.0;
      while (hi - lo > kBracket) {
        const double mid = 0.5 * (lo + hi);
        const double gm = gap(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((gm > 0.0) == lo_above) lo = mid;
        else hi = mid;
      }
      scan.bracket_width = hi - lo;
      // Report the endpoint where the map is on or below the diagonal.
      scan.x0 = lo_above ? hi : lo;
      return scan;
    }
    a = b;
    ga = gb;
  }
  return scan;
}

std::optional<double> fixed_point_bound(const std::function<double(double)>& f,
                                        double lambda_const, double slab_diameter, double x_max) {
  return scan_fixed_point(f, lambda_const, slab_diameter, x_max).x0;
}

IterationEngine::IterationEngine(const SystemSpec& spec, LinearSolveSettings settings)
    : spec_(spec), solver_(spec.grid_ptr(), settings) {}

std::vector<ScalarField> IterationEngine::right_hand_sides(
    const std::vector<ScalarField>& fields) const {
  const Grid& g = spec_.grid();
  const std::size_t n = spec_.n_plus_1();
  std::vector<ScalarField> rhs(n, ScalarField(spec_.grid_ptr()));
  std::vector<double> z(n);
  for (std::size_t node : g.interior_nodes()) {
    for (std::size_t j = 0; j < n; ++j) z[j] = fields[j][node];
    for (std::size_t l = 0; l < n; ++l) {
      const double v = spec_.lambda(l)[node] * spec_.evaluate_f(l, z);
      if (!std::isfinite(v)) throw SolveError("nonlinearity produced a non-finite value");
      rhs[l][node] = v;
    }
  }
  return rhs;
}

IterationState IterationEngine::initial_state(const ScalarField& h) const {
  if (!h.aligned_with(spec_.grid())) throw std::invalid_argument("initial field not aligned");
  IterationState state;
  state.fields.assign(spec_.n_plus_1(), h);
  state.rhs = right_hand_sides(state.fields);
  state.record.k = 0;
  for (const auto& u : state.fields) state.record.sup_norms.push_back(u.sup_norm());
  double res = 0.0;
  for (std::size_t l = 0; l < spec_.n_plus_1(); ++l) {
    res = std::max(res, residual_sup(spec_.grid(), state.fields[l], state.rhs[l]));
  }
  state.record.nonlinear_residual = res;
  return state;
}

IterationState IterationEngine::iterate_once(const IterationState& state) const {
  const std::size_t n = spec_.n_plus_1();
  const Grid& g = spec_.grid();
  const double d = g.slab_diameter();
  const double tau = solver_.settings().tolerance;

  for (const auto& u : state.fields) {
    if (u.min() < -slack(1.0)) throw std::invalid_argument("iterate_once: state fields must be nonnegative");
  }

  std::vector<ScalarField> next;
  next.reserve(n);
  if (n == 1) {
    next.push_back(solver_.solve(state.rhs[0]));
  } else {
    std::vector<std::future<ScalarField>> jobs;
    jobs.reserve(n);
    for (std::size_t l = 0; l < n; ++l) {
      jobs.push_back(std::async(std::launch::async, [this, &state, l] {
        return solver_.solve(state.rhs[l]);
      }));
    }
    for (auto& job : jobs) next.push_back(job.get());
  }

  IterationState out;
  out.k = state.k + 1;
  auto& rec = out.record;
  rec.k = out.k;
  rec.monotonicity_margin = std::numeric_limits<double>::infinity();
  double rhs_scale = 0.0;
  double f_sup = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    const double rhs_sup = state.rhs[l].sup_norm();
    rhs_scale = std::max(rhs_scale, rhs_sup);
    // Only the interior carries lambda; recover ||f_l|| through Lambda_upper.
    double fl = 0.0;
    for (std::size_t node : g.interior_nodes()) {
      const double lam = spec_.lambda(l)[node];
      if (lam > 0.0) fl = std::max(fl, std::abs(state.rhs[l][node]) / lam);
    }
    f_sup = std::max(f_sup, fl);
    check_sup_bound(next[l], state.rhs[l], d, tau);
    rec.sup_norms.push_back(next[l].sup_norm());
    rec.step_delta = std::max(rec.step_delta, sup_distance(next[l], state.fields[l]));
    rec.monotonicity_margin = std::min(rec.monotonicity_margin, min_difference(next[l], state.fields[l]));
  }
  rec.chain_bound = d * d / 8.0 * spec_.Lambda_upper() * f_sup;
  rec.rhs_scale = rhs_scale;


  out.fields = std::move(next);
  out.rhs = right_hand_sides(out.fields);
  for (std::size_t l = 0; l < n; ++l) {
    rec.nonlinear_residual =
        std::max(rec.nonlinear_residual, residual_sup(g, out.fields[l], out.rhs[l]));
  }
  return out;
}

Solution IterationEngine::run(const ScalarField& h, const StoppingCriteria& criteria,
                              const TraceBound& bound) const {
  criteria.validate(solver_.settings().tolerance);
  Solution solution;
  solution.bound = bound;

  auto enforce_bound = [&](const IterationRecord& rec) {
    double total = 0.0, worst = 0.0;
    for (double s : rec.sup_norms) {
      total += s;
      worst = std::max(worst, s);
    }
    const double allowed = slack(std::max(1.0, bound.limit));
    if (bound.kind == TraceBound::Kind::apriori_sum && total > bound.limit + allowed) {
      std::ostringstream msg;
      msg << "sum of sup norms " << total << " exceeds a-priori bound " << bound.limit
          << " at iterate " << rec.k;
      throw InvariantViolation("a-priori bound", msg.str());
    }
    if (bound.kind == TraceBound::Kind::fixed_point && worst > bound.limit + allowed) {
      std::ostringstream msg;
      msg << "sup norm " << worst << " exceeds fixed point x0 = " << bound.limit << " at iterate "
          << rec.k;
      throw InvariantViolation("fixed point bound", msg.str());
    }
  };

  IterationState state = initial_state(h);
  enforce_bound(state.record);
  solution.trace.push_back(state.record);
  for (int it = 0; it < criteria.max_iters; ++it) {
    state = iterate_once(state);
    if (state.record.monotonicity_margin < -slack(state.record.rhs_scale)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "iterate " << state.k << " decreased by " << -state.record.monotonicity_margin
          << " (allowed " << slack(state.record.rhs_scale) << ")";
      throw InvariantViolation("monotone trace", msg.str());
    }
    enforce_bound(state.record);
    solution.trace.push_back(state.record);
    if (state.record.step_delta < criteria.tol_step &&
        state.record.nonlinear_residual < criteria.tol_residual) {
      solution.converged = true;
      break;
    }
  }

  double largest = 0.0;
  for (const auto& u : state.fields) largest = std::max(largest, u.sup_norm());
  const double h_sup = h.sup_norm();
  double below = 0.0;
  for (const auto& u : state.fields) below = std::min(below, min_difference(u, h));
  if (largest < h_sup - slack(1.0) || below < -slack(1.0)) {
    throw InvariantViolation("nontriviality", "final iterate fell below the subsolution");
  }
  solution.fields = std::move(state.fields);
  return solution;
}

Solution IterationEngine::run(const SubsolutionCertificate& certificate,
                              const StoppingCriteria& criteria, const TraceBound& bound) const {
  return run(certificate.h, criteria, bound);
}

SolveResult solve(const SystemSpec& spec, const SolveOptions& options) {
  const Grid& g = spec.grid();
  const LinearSolveSettings linear = options.linear.value_or(LinearSolveSettings::defaults_for(g));
  options.criteria.validate(linear.tolerance);

  SolveResult result{.certificate = {.h = ScalarField(spec.grid_ptr())}};
  double delta = options.delta;
  const auto& system = spec.system();
  if (!system.growth) {
    if (spec.n_plus_1() != 1) {
      throw SpecError(
          "no growth envelope (condition (a)) declared and the positive fixed point route (a') "
          "only covers single equations");
    }
    auto f = [&](double x) {
      const double z[1] = {x};
      return spec.evaluate_f(0, z);
    };
    result.fixed_point =
        scan_fixed_point(f, spec.Lambda_upper(), g.slab_diameter(), options.fixed_point_search_max);
    if (!result.fixed_point->x0) {
      std::ostringstream msg;
      msg << "condition (a') unverifiable: (d^2/8) lambda f has no positive fixed point on (0, "
          << options.fixed_point_search_max << "]";
      throw SpecError(msg.str());
    }
    delta = std::min(delta, 0.5 * *result.fixed_point->x0);
  }

  result.certificate = build_subsolution(spec, delta);

  TraceBound bound;
  if (system.growth) {
    result.apriori = apriori_bound(*system.growth, spec.n_plus_1(), spec.Lambda_upper(),
                                   g.slab_diameter(),
                                   static_cast<double>(spec.n_plus_1()) * result.certificate.h_sup);
    bound = {TraceBound::Kind::apriori_sum, result.apriori->enforced_sum};
  } else {
    bound = {TraceBound::Kind::fixed_point, *result.fixed_point->x0};
  }

  IterationEngine engine(spec, linear);
  result.solution = engine.run(result.certificate, options.criteria, bound);
  return result;
}

}  // namespace sublinear
