#include "sublinear/exhaustion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sublinear/errors.hpp"

namespace sublinear {

void ExhaustionPlan::validate() const {
  if (!(strip_halfwidth > 0.0)) throw std::invalid_argument("strip halfwidth must be positive");
  if (!(spacing > 0.0)) throw std::invalid_argument("spacing must be positive");
  if (lengths.empty()) throw std::invalid_argument("exhaustion needs at least one length");
  if (lengths.front() < 4.0 * strip_halfwidth) {
    throw std::invalid_argument("smallest truncation must satisfy L_1 >= 4 * halfwidth");
  }
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    if (k > 0 && !(lengths[k] > lengths[k - 1])) {
      throw std::invalid_argument("truncation lengths must be strictly increasing");
    }
    // Node alignment needs L/spacing to be an even integer.
    const double cells = lengths[k] / spacing;
    if (std::abs(cells - std::round(cells)) > 1e-9 * cells ||
        static_cast<long long>(std::round(cells)) % 2 != 0) {
      throw std::invalid_argument("truncation lengths must be even multiples of the spacing");
    }
  }
  const double cells = 2.0 * strip_halfwidth / spacing;
  if (std::abs(cells - std::round(cells)) > 1e-9 * cells) {
    throw std::invalid_argument("strip width must be a multiple of the spacing");
  }
}

BoundaryDecayReport boundary_decay_check(std::span<const ScalarField> solution,
                                         double strip_halfwidth, double D,
                                         std::span<const double> epsilons) {
  if (solution.empty()) throw std::invalid_argument("boundary_decay_check: empty solution");
  if (!(D > 0.0)) throw std::invalid_argument("boundary_decay_check: D must be positive");
  const Grid& g = solution.front().grid();
  BoundaryDecayReport report;
  report.D = D;
  for (double eps : epsilons) {
    EpsilonCheck check{.epsilon = eps, .radius = eps / (2.0 * D)};
    for (std::size_t node = 0; node < g.node_count(); ++node) {
      const Point p = g.coordinate(node);
      // Distance to the nearest point of the long sides y = +-halfwidth.
      const double dist = strip_halfwidth - std::abs(p.y);
      if (dist > check.radius) continue;
      for (const auto& u : solution) check.worst = std::max(check.worst, std::abs(u[node]));
    }
    check.pass = check.worst < eps;
    if (check.pass && (!report.finest_passing_epsilon || eps < *report.finest_passing_epsilon)) {
      report.finest_passing_epsilon = eps;
    }
    report.checks.push_back(check);
  }
  return report;
}

ExhaustionReport run_exhaustion(const ExhaustionPlan& plan, const SystemDefinition& definition,
                                const SolveOptions& options) {
  plan.validate();
  for (const auto& f : definition.system.f) {
    if (!f.is_holder_continuous()) {
      throw SpecError("exhaustion requires Holder continuous nonlinearities; '" +
                      std::string(to_string(f.kind())) + "' has jumps");
    }
  }

  ExhaustionReport report;
  const double d = 2.0 * plan.strip_halfwidth;
  const std::size_t n = definition.system.size();
  for (double L : plan.lengths) {
    GridPtr grid = truncate_strip(plan.strip_halfwidth, L, plan.spacing);
    const SystemSpec spec = definition.instantiate(grid);
    TruncationResult tr{.length = L, .grid = grid, .result = solve(spec, options)};
    const auto& sol = tr.result.solution;
    if (!sol.converged) {
      std::ostringstream msg;
      msg << "truncation L = " << L << " did not converge within " << options.criteria.max_iters
          << " iterations";
      throw NotConverged(msg.str());
    }
    const Grid& g = *tr.grid;
    double f_sup = 0.0;
    std::vector<double> z(n);
    for (std::size_t node : g.interior_nodes()) {
      for (std::size_t j = 0; j < n; ++j) z[j] = sol.fields[j][node];
      for (std::size_t l = 0; l < n; ++l) f_sup = std::max(f_sup, std::abs(spec.evaluate_f(l, z)));
    }
    tr.uniform_bound = d * d / 8.0 * spec.Lambda_upper() * f_sup;
    for (const auto& u : sol.fields) tr.sup_norms.push_back(u.sup_norm());
    const double slack = 10.0 * spec.Lambda_upper() * 1e-10 + options.criteria.tol_step;
    for (double s : tr.sup_norms) {
      if (s > tr.uniform_bound + slack) {
        std::ostringstream msg;
        msg << "truncation L = " << L << " sup norm " << s << " exceeds strip bound "
            << tr.uniform_bound;
        throw InvariantViolation("L-independent bound", msg.str());
      }
    }
    for (std::size_t node = 0; node < g.node_count(); ++node) {
      if (0.5 * L - std::abs(g.coordinate(node).x) > 2.0 * plan.spacing + 1e-12) continue;
      for (const auto& u : sol.fields) tr.end_sup = std::max(tr.end_sup, std::abs(u[node]));
    }
    report.truncations.push_back(std::move(tr));
  }

  const double tol = 10.0 * options.criteria.tol_step;
  const double window = plan.window_halfwidth();
  for (std::size_t k = 0; k + 1 < report.truncations.size(); ++k) {
    const auto& small = report.truncations[k];
    const auto& large = report.truncations[k + 1];
    double margin = std::numeric_limits<double>::infinity();
    double delta = 0.0;
    const Grid& gs = *small.grid;
    for (std::size_t node = 0; node < gs.node_count(); ++node) {
      const Point p = gs.coordinate(node);
      const auto other = large.grid->node_at(p);
      if (!other) throw std::logic_error("truncation grids are not node-aligned");
      for (std::size_t l = 0; l < n; ++l) {
        const double a = small.result.solution.fields[l][node];
        const double b = large.result.solution.fields[l][*other];
        margin = std::min(margin, b - a);
        if (std::abs(p.x) <= window + 1e-12) delta = std::max(delta, std::abs(b - a));
      }
    }
    if (margin < -tol) {
      std::ostringstream msg;
      msg << "solution on L = " << large.length << " lies below L = " << small.length << " by "
          << -margin;
      throw InvariantViolation("cross-truncation monotonicity", msg.str());
    }
    report.monotone_margins.push_back(margin);
    if (!report.window_deltas.empty() && !(delta < report.window_deltas.back())) {
      report.window_cauchy = false;
    }
    report.window_deltas.push_back(delta);
  }

  const auto& last = report.truncations.back();
  double D = 0.0;
  for (const auto& tr : report.truncations)
    for (double s : tr.sup_norms) D = std::max(D, s);
  const double epsilons[] = {1e-1, 1e-2, 1e-3};
  if (D > 0.0) {
    report.boundary_decay =
        boundary_decay_check(last.result.solution.fields, plan.strip_halfwidth, D, epsilons);
  } else {
    report.boundary_decay.D = 0.0;
    for (double eps : epsilons) report.boundary_decay.checks.push_back({eps, 0.0, 0.0, true});
    report.boundary_decay.finest_passing_epsilon = epsilons[2];
  }
  return report;
}

}  // namespace sublinear
