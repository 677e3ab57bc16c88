#pragma once

#include <memory>

#include "sublinear/field.hpp"

namespace sublinear {

enum class LinearMethod { direct_sparse, conjugate_gradient };

struct LinearSolveSettings {
  /// Grids above this many unknowns default to preconditioned CG.
  static constexpr std::size_t kDirectLimit = 1'000'000;

  LinearMethod method = LinearMethod::direct_sparse;
  /// Residual bound relative to ||rhs||_inf. Only binding for CG; also used
  /// as the slack scale for the maximum-principle checks.
  double tolerance = 1e-10;
  int max_iterations = 20000;

  static LinearSolveSettings defaults_for(const Grid& grid);
  void validate() const;
};

/// Zero-Dirichlet solver for the 5-point (3-point in 1-D) discrete
/// Laplacian on one grid. The direct factorization is computed once and
/// `solve` is safe to call concurrently.
class PoissonSolver {
 public:
  PoissonSolver(GridPtr grid, LinearSolveSettings settings);
  ~PoissonSolver();
  PoissonSolver(PoissonSolver&&) noexcept;
  PoissonSolver& operator=(PoissonSolver&&) noexcept;

  /// Solves -Lap_h u = rhs at interior nodes, u = 0 elsewhere.
  ScalarField solve(const ScalarField& rhs) const;

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const LinearSolveSettings& settings() const { return settings_; }

 private:
  struct Impl;
  GridPtr grid_;
  LinearSolveSettings settings_;
  std::unique_ptr<Impl> impl_;
};

ScalarField solve_dirichlet(GridPtr grid, const ScalarField& rhs,
                            const LinearSolveSettings& settings);

/// (-Lap_h u) at interior nodes, 0 elsewhere. Neighbour values are read from
/// `u` as stored.
ScalarField negative_laplacian(const ScalarField& u);

/// max over interior nodes of |-Lap_h u - rhs|.
double residual_sup(const Grid& grid, const ScalarField& u, const ScalarField& rhs);

struct SupBoundReport {
  double bound = 0.0;     ///< (d^2/8) ||rhs||_inf
  double attained = 0.0;  ///< ||u||_inf / bound (0 when bound is 0)
  double margin = 0.0;    ///< bound + slack - ||u||_inf, >= 0 on success
  double sup_u = 0.0;
  double sup_rhs = 0.0;
};

/// Enforces ||u||_inf <= (d^2/8)||rhs||_inf + 10 tau ||rhs||_inf.
/// Throws InvariantViolation if the bound fails.
SupBoundReport check_sup_bound(const ScalarField& u, const ScalarField& rhs, double slab_diameter,
                               double tau_lin = 1e-10);

}  // namespace sublinear
