#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace sublinear {

enum class NonlinearityKind {
  power_product,
  power_sum,
  power_exp,
  left_continuous_step,
  custom_table,
};

std::string_view to_string(NonlinearityKind kind);
NonlinearityKind nonlinearity_kind_from_string(std::string_view name);

// All power-type atoms act on the positive part z+ = max(z, 0): iterates
// are nonnegative, and the clamp keeps every built-in nondecreasing on R.

struct PowerFactor {
  std::size_t index = 0;
  double exponent = 0.5;
};

/// coefficient * prod_j (z_j+)^{p_j}. Lane-Emden: a single factor on the
/// next component.
struct PowerProduct {
  double coefficient = 1.0;
  std::vector<PowerFactor> factors;
};

struct PowerTerm {
  std::size_t index = 0;
  double coefficient = 1.0;
  double exponent = 0.5;
};

/// constant + sum_j a_j (z_j+)^{alpha_j}.
struct PowerSum {
  double constant = 0.0;
  std::vector<PowerTerm> terms;
};

/// coefficient * (z+)^s * exp((z+)^m) on one component.
struct PowerExp {
  std::size_t index = 0;
  double s = 0.5;
  double m = 1.0;
  double coefficient = 1.0;
};

/// Jump of size `jump` once z_index passes `threshold`. The default is open
/// on the left (value below the jump at z == threshold); `jump_at_threshold`
/// builds the right-continuous variant, which violates continuity from below.
struct Step {
  std::size_t index = 0;
  double threshold = 1.0;
  double jump = 0.0;
  bool jump_at_threshold = false;
};

/// base + power terms + steps.
struct StepSum {
  double base = 0.0;
  std::vector<PowerTerm> terms;
  std::vector<Step> steps;
};

/// Piecewise-linear interpolation of a nondecreasing table on one
/// component, held constant outside the knot range.
struct TabulatedMonotone {
  std::size_t index = 0;
  std::vector<double> knots;
  std::vector<double> values;
};

using NonlinearityParams =
    std::variant<PowerProduct, PowerSum, PowerExp, StepSum, TabulatedMonotone>;

/// One right-hand side f_l(z_0, ..., z_n).
class Nonlinearity {
 public:
  explicit Nonlinearity(NonlinearityParams params);

  NonlinearityKind kind() const;
  const NonlinearityParams& params() const { return params_; }

  /// Pure and deterministic. Throws on non-finite input.
  double operator()(std::span<const double> z) const;

  /// Checks kind-specific parameters against an argument count of `arity`.
  void validate(std::size_t arity) const;

  /// (component, value) pairs where the function may jump or kink; used to
  /// aim the continuity-from-below sampler at the interesting targets.
  std::vector<std::pair<std::size_t, double>> breakpoints() const;

  /// False for kinds with jump discontinuities.
  bool is_holder_continuous() const;

 private:
  NonlinearityParams params_;
};

}  // namespace sublinear
