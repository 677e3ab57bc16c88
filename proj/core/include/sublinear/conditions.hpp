#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sublinear/system_spec.hpp"

namespace sublinear {

/// Outcome of one sampling-based hypothesis check. Checks are seeded and
/// fully deterministic.
struct ConditionReport {
  std::string condition;  ///< "a", "b", "c" or "d"
  std::string name;       ///< e.g. "growth"
  bool pass = true;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double max_violation = 0.0;  ///< largest excess over the declared inequality (0 if none)
  std::size_t worst_equation = 0;
  std::vector<double> worst_point;
  std::string note;
};

struct SamplingOptions {
  std::size_t samples = 10000;
  double box_radius = 10.0;
  std::uint64_t seed = 20240607;
};

/// (a): |f_l(z)| <= min over declared j of (C_{l,j}|z_j|^{p_{l,j}} + A) on
/// [-R, R]^{n+1}, plus points along every coordinate axis. Fails outright if
/// no growth envelope is declared.
ConditionReport verify_growth(const NonlinearSystem& system, const SamplingOptions& options);

/// (b): f_l(z) >= sum_j A_{l,j}|z_j|^{alpha_{l,j}} on [0, epsilon0)^{n+1},
/// to 1e-12 absolute.
ConditionReport verify_lower_envelope(const NonlinearSystem& system,
                                      const SamplingOptions& options);

/// (c): f_l(y) <= f_l(z) + 1e-12 for random ordered pairs y <= z in the
/// nonnegative orthant.
ConditionReport verify_cooperative(const NonlinearSystem& system, const SamplingOptions& options);

/// (d): along geometric sequences z_k increasing to z, f_l(z_k) is within
/// 1e-8 max(1, |f_l(z)|) of f_l(z) once ||z - z_k|| <= 1e-10. Targets include every declared
/// breakpoint.
ConditionReport verify_continuity_from_below(const NonlinearSystem& system,
                                             const SamplingOptions& options);

/// All four checks in order (a), (b), (c), (d).
std::vector<ConditionReport> verify_all(const NonlinearSystem& system,
                                        const SamplingOptions& options);

}  // namespace sublinear
