#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sublinear/poisson.hpp"
#include "sublinear/subsolution.hpp"
#include "sublinear/system_spec.hpp"

namespace sublinear {

struct StoppingCriteria {
  double tol_step = 1e-8;      ///< sup-norm successive difference
  double tol_residual = 1e-8;  ///< sup-norm nonlinear residual
  int max_iters = 500;

  /// Both tolerances must sit at least two orders above tau_lin.
  void validate(double tau_lin) const;
};

/// Diagnostics of iterate k (k = 0 is the initial state).
struct IterationRecord {
  int k = 0;
  std::vector<double> sup_norms;
  double step_delta = 0.0;           ///< max_l ||u_{l,k} - u_{l,k-1}||_inf
  double monotonicity_margin = 0.0;  ///< min over nodes, l of u_{l,k} - u_{l,k-1}
  double nonlinear_residual = 0.0;   ///< max_l residual_sup(u_{l,k}, lambda_l f_l(u_k))
  double chain_bound = 0.0;          ///< (d^2/8) Lambda_upper max_l ||f_l(u_{k-1})||_inf
  double rhs_scale = 0.0;            ///< max_l ||lambda_l f_l(u_{k-1})||_inf
};

struct IterationState {
  int k = 0;
  std::vector<ScalarField> fields;
  /// lambda_l f_l(u_k), the right-hand sides of the next step.
  std::vector<ScalarField> rhs;
  IterationRecord record;
};

/// Boundedness estimate from the growth envelope. With c = d^2/8,
/// B = max(C_{l,j}, A), p = max p_{l,j} and K = 2(n+1) c Lambda_upper B, the
/// iterates satisfy t' <= 1 + K t^p for t = 1 + sum_l ||u_l||_inf.
struct AprioriBound {
  double c = 0.0;
  double B = 0.0;
  double p = 0.0;
  double K = 0.0;
  /// 1 + S* = K^{1/(1-p)}, the fixed point of t = K t^p.
  double closed_form_t = 0.0;
  /// (1 + K)^{1/(1-p)}: an invariant level of t -> 1 + K t^p.
  double rigorous_t = 0.0;
  double initial_sum = 0.0;
  /// Bound enforced on sum_l ||u_{l,k}||_inf:
  /// max(rigorous_t - 1, initial_sum).
  double enforced_sum = 0.0;
  /// The closed form falls below the initial iterate and is only advisory.
  bool degenerate = false;
};

AprioriBound apriori_bound(const GrowthEnvelope& growth, std::size_t n_plus_1, double Lambda_upper,
                           double slab_diameter, double initial_sum = 0.0);

struct FixedPointScan {
  /// Bracket endpoint at which (d^2/8) lambda f lies on or below the
  /// diagonal; absent when no sign change was found.
  std::optional<double> x0;
  double scan_lo = 0.0;
  double scan_hi = 0.0;
  std::size_t scan_points = 0;
  double bracket_width = 0.0;
};

/// Smallest positive fixed point of x -> (d^2/8) lambda f(x) found by a
/// log-spaced sign scan on [1e-12, x_max] followed by bisection to a
/// 1e-12 bracket.
FixedPointScan scan_fixed_point(const std::function<double(double)>& f, double lambda_const,
                                double slab_diameter, double x_max = 50.0);

std::optional<double> fixed_point_bound(const std::function<double(double)>& f,
                                        double lambda_const, double slab_diameter,
                                        double x_max = 50.0);

/// Limit enforced on every recorded iterate.
struct TraceBound {
  enum class Kind { none, apriori_sum, fixed_point };
  Kind kind = Kind::none;
  double limit = 0.0;
};

struct Solution {
  std::vector<ScalarField> fields;
  std::vector<IterationRecord> trace;
  bool converged = false;
  TraceBound bound;
};

/// Monotone iteration -Lap u_{j,k+1} = lambda_j f_j(u_{0,k}, ..., u_{n,k}).
/// Holds one factorization of the grid Laplacian; not for concurrent use.
class IterationEngine {
 public:
  IterationEngine(const SystemSpec& spec, LinearSolveSettings settings);

  /// All components set to `h`.
  IterationState initial_state(const ScalarField& h) const;

  /// One step from a nonnegative state; the n+1 Dirichlet solves run
  /// concurrently. Throws InvariantViolation if a solve breaks the sup-norm
  /// bound. Monotonicity is recorded, not enforced: that is run's job.
  IterationState iterate_once(const IterationState& state) const;

  /// Iterates from u_{j,0} = h until both stopping tolerances hold or
  /// max_iters is reached (then `converged` is false). A decrease beyond
  /// 10 tau_lin ||rhs||_inf or a bound excess throws InvariantViolation.
  Solution run(const ScalarField& h, const StoppingCriteria& criteria,
               const TraceBound& bound = {}) const;
  Solution run(const SubsolutionCertificate& certificate, const StoppingCriteria& criteria,
               const TraceBound& bound = {}) const;

  const SystemSpec& spec() const { return spec_; }
  const LinearSolveSettings& settings() const { return solver_.settings(); }

 private:
  std::vector<ScalarField> right_hand_sides(const std::vector<ScalarField>& fields) const;
  double slack(double scale) const { return 10.0 * solver_.settings().tolerance * scale; }

  const SystemSpec& spec_;
  PoissonSolver solver_;
};

struct SolveOptions {
  double delta = 1.0;
  StoppingCriteria criteria;
  std::optional<LinearSolveSettings> linear;  ///< defaults_for(grid) when unset
  double fixed_point_search_max = 50.0;
};

struct SolveResult {
  SubsolutionCertificate certificate;
  Solution solution;
  std::optional<AprioriBound> apriori;
  std::optional<FixedPointScan> fixed_point;
};

/// Full pipeline: choose the boundedness route (growth envelope, else a
/// positive fixed point for single equations), build and certify the
/// subsolution, and run the monotone iteration with the bound enforced.
/// Throws SpecError when neither boundedness route applies.
SolveResult solve(const SystemSpec& spec, const SolveOptions& options);

}  // namespace sublinear
