#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sublinear/iteration.hpp"

namespace sublinear {

/// Nested truncations (-L_k/2, L_k/2) x (-halfwidth, halfwidth) of an
/// unbounded strip, all on one node lattice.
struct ExhaustionPlan {
  double strip_halfwidth = 0.5;
  std::vector<double> lengths;
  double spacing = 1.0 / 32.0;

  void validate() const;
  /// Central half of the smallest truncation: |x| <= L_1/4.
  double window_halfwidth() const { return lengths.front() / 4.0; }
};

struct TruncationResult {
  double length = 0.0;
  GridPtr grid;
  SolveResult result;
  std::vector<double> sup_norms;
  /// (d^2/8) Lambda_upper max_l ||f_l(u)||_inf with d = 2 * halfwidth.
  double uniform_bound = 0.0;
  /// sup of the solution within 2 spacings of the artificial ends x = +-L/2.
  double end_sup = 0.0;
};

struct EpsilonCheck {
  double epsilon = 0.0;
  double radius = 0.0;  ///< r = epsilon / (2 D)
  double worst = 0.0;   ///< largest |u_j(p')| found within r of the long sides
  bool pass = false;
};

struct BoundaryDecayReport {
  double D = 0.0;
  std::vector<EpsilonCheck> checks;
  /// Smallest tested epsilon that passes, if any.
  std::optional<double> finest_passing_epsilon;
};

struct ExhaustionReport {
  std::vector<TruncationResult> truncations;
  /// min over shared nodes and l of u_{l,k+1} - u_{l,k}, per consecutive pair.
  std::vector<double> monotone_margins;
  /// max over window nodes and l of |u_{l,k+1} - u_{l,k}|, per consecutive pair.
  std::vector<double> window_deltas;
  /// Every consecutive ratio of window_deltas is below 1.
  bool window_cauchy = true;
  BoundaryDecayReport boundary_decay;
};

/// Solves on every truncation and checks cross-truncation monotonicity
/// (to 10 * tol_step), the L-independent sup bound and boundary decay.
/// Rejects nonlinearities with jumps: the strip theory needs Holder data.
ExhaustionReport run_exhaustion(const ExhaustionPlan& plan, const SystemDefinition& definition,
                                const SolveOptions& options);

/// Scans nodes within r = epsilon/(2D) of the long sides y = +-halfwidth
/// and reports, per epsilon, whether all |u_j| < epsilon there.
BoundaryDecayReport boundary_decay_check(std::span<const ScalarField> solution,
                                         double strip_halfwidth, double D,
                                         std::span<const double> epsilons);

}  // namespace sublinear
