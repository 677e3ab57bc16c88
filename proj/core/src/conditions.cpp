#include "sublinear/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sublinear {

namespace {

constexpr double kLowerTolerance = 1e-12;
constexpr double kCooperativeTolerance = 1e-12;
constexpr double kContinuityTolerance = 1e-8;
constexpr double kApproachDistance = 1e-10;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    // Portable: avoids implementation-defined distribution internals.
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

 private:
  std::mt19937_64 engine_;
};

void record(ConditionReport& report, double excess, std::size_t l, const std::vector<double>& z,
            double tolerance) {
  ++report.samples;
  if (excess > tolerance) {
    ++report.violations;
    report.pass = false;
  }
  if (excess > report.max_violation) {
    report.max_violation = excess;
    report.worst_equation = l;
    report.worst_point = z;
  }
}

std::vector<std::vector<double>> axis_rays(std::size_t n, double lo, double hi, int per_axis) {
  std::vector<std::vector<double>> points;
  points.emplace_back(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (int k = 0; k <= per_axis; ++k) {
      std::vector<double> z(n, 0.0);
      z[j] = lo + (hi - lo) * static_cast<double>(k) / per_axis;
      points.push_back(std::move(z));
    }
  }
  // Diagonal ray: all components equal.
  for (int k = 0; k <= per_axis; ++k) {
    points.emplace_back(n, lo + (hi - lo) * static_cast<double>(k) / per_axis);
  }
  return points;
}

double growth_bound(const GrowthEnvelope& g, std::size_t l, const std::vector<double>& z) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (!g.declared(l, j)) continue;
    best = std::min(best, g.C[l][j] * std::pow(std::abs(z[j]), g.p[l][j]) + g.A);
  }
  return best;
}

double lower_bound(const LowerEnvelope& e, std::size_t l, const std::vector<double>& z) {
  double acc = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (e.A[l][j] > 0.0) acc += e.A[l][j] * std::pow(std::abs(z[j]), e.alpha[l][j]);
  }
  return acc;
}

}  // namespace

ConditionReport verify_growth(const NonlinearSystem& system, const SamplingOptions& options) {
  ConditionReport report{.condition = "a", .name = "growth"};
  const std::size_t n = system.size();
  if (!system.growth) {
    report.pass = false;
    report.note = "no growth envelope declared; use the positive fixed point path (a')";
    return report;
  }
  const auto& g = *system.growth;
  const double r = options.box_radius;
  auto check = [&](const std::vector<double>& z) {
    for (std::size_t l = 0; l < n; ++l) {
      const double value = std::abs(system.evaluate(l, z));
      const double bound = growth_bound(g, l, z);
      record(report, value - bound, l, z, 1e-12 * std::max(1.0, bound));
    }
  };
  Sampler sampler(options.seed);
  std::vector<double> z(n);
  for (std::size_t s = 0; s < options.samples; ++s) {
    for (auto& v : z) v = sampler.uniform(-r, r);
    check(z);
  }
  for (const auto& ray : axis_rays(n, -r, r, 200)) check(ray);
  if (!report.pass) {
    report.note = "sublinear growth envelope violated; if f grows superlinearly, try the "
                  "positive fixed point path (a')";
  }
  return report;
}

ConditionReport verify_lower_envelope(const NonlinearSystem& system,
                                      const SamplingOptions& options) {
  ConditionReport report{.condition = "b", .name = "lower_envelope"};
  const std::size_t n = system.size();
  const double eps = system.lower.epsilon0;
  auto check = [&](const std::vector<double>& z) {
    for (std::size_t l = 0; l < n; ++l) {
      const double excess = lower_bound(system.lower, l, z) - system.evaluate(l, z);
      record(report, excess, l, z, kLowerTolerance);
    }
  };
  Sampler sampler(options.seed + 1);
  std::vector<double> z(n);
  for (std::size_t s = 0; s < options.samples; ++s) {
    for (auto& v : z) v = sampler.uniform(0.0, eps);
    check(z);
  }
  // Rays stay strictly below epsilon0 (the condition's domain is open).
  for (auto ray : axis_rays(n, 0.0, eps * (1.0 - 1e-9), 200)) check(ray);
  return report;
}

ConditionReport verify_cooperative(const NonlinearSystem& system, const SamplingOptions& options) {
  ConditionReport report{.condition = "c", .name = "cooperative"};
  const std::size_t n = system.size();
  const double r = options.box_radius;
  Sampler sampler(options.seed + 2);
  std::vector<double> y(n), z(n), both(2 * n);
  for (std::size_t s = 0; s < options.samples; ++s) {
    for (std::size_t j = 0; j < n; ++j) {
      y[j] = sampler.uniform(0.0, r);
      // Leave some components equal so single-coordinate moves are covered.
      z[j] = sampler.index(3) == 0 ? y[j] : y[j] + sampler.uniform(0.0, r);
    }
    for (std::size_t l = 0; l < n; ++l) {
      const double excess = system.evaluate(l, y) - system.evaluate(l, z);
      std::copy(y.begin(), y.end(), both.begin());
      std::copy(z.begin(), z.end(), both.begin() + static_cast<std::ptrdiff_t>(n));
      record(report, excess, l, both, kCooperativeTolerance);
    }
  }
  return report;
}

ConditionReport verify_continuity_from_below(const NonlinearSystem& system,
                                             const SamplingOptions& options) {
  ConditionReport report{.condition = "d", .name = "continuity_from_below"};
  const std::size_t n = system.size();
  const double r = options.box_radius;
  Sampler sampler(options.seed + 3);

  std::vector<std::vector<double>> targets;
  for (std::size_t s = 0; s < options.samples; ++s) {
    std::vector<double> z(n);
    for (auto& v : z) v = sampler.uniform(0.0, r);
    targets.push_back(std::move(z));
  }
  // Breakpoints are where left- and right-continuity differ; aim at them.
  for (const auto& fl : system.f) {
    for (auto [j, value] : fl.breakpoints()) {
      for (int rep = 0; rep < 4; ++rep) {
        std::vector<double> z(n);
        for (auto& v : z) v = sampler.uniform(0.0, r);
        z[j] = value;
        targets.push_back(std::move(z));
      }
    }
  }

  std::vector<double> zk(n), dir(n);
  for (const auto& z : targets) {
    // Direction with components in (0, z_j] so the sequence stays in the
    // orthant; zero components stay fixed.
    double dir_norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      dir[j] = z[j] * sampler.uniform(0.05, 1.0);
      dir_norm = std::max(dir_norm, dir[j]);
    }
    double step = 1.0;
    while (dir_norm * step > kApproachDistance) step *= 0.5;
    for (std::size_t j = 0; j < n; ++j) zk[j] = z[j] - step * dir[j];
    for (std::size_t l = 0; l < n; ++l) {
      const double fz = system.evaluate(l, z);
      const double gap = std::abs(system.evaluate(l, zk) - fz);
      record(report, gap, l, z, kContinuityTolerance * std::max(1.0, std::abs(fz)));
    }
  }
  return report;
}

std::vector<ConditionReport> verify_all(const NonlinearSystem& system,
                                        const SamplingOptions& options) {
  return {verify_growth(system, options), verify_lower_envelope(system, options),
          verify_cooperative(system, options), verify_continuity_from_below(system, options)};
}

}  // namespace sublinear
