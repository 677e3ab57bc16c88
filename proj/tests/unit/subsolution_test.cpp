#include <gtest/gtest.h>

#include <cmath>

#include "sublinear/errors.hpp"
#include "sublinear/subsolution.hpp"
#include "helpers.hpp"

using namespace sublinear;
using namespace sublinear::testing;

namespace {

// Radial sampler at 10^6 points, computed independently in log space.
constexpr double kC_R1_dim2_s05 = 6.73466661931484;

double fd_laplacian(Point x, Point q, double R, int dim) {
  const double e = 1e-5;
  auto phi = [&](double dx, double dy) { return bump_value({x.x + dx, x.y + dy}, q, R); };
  double lap = (phi(e, 0) - 2 * phi(0, 0) + phi(-e, 0)) / (e * e);
  if (dim == 2) lap += (phi(0, e) - 2 * phi(0, 0) + phi(0, -e)) / (e * e);
  return lap;
}

}  // namespace

TEST(Bump, Values) {
  EXPECT_NEAR(bump_value({0, 0}, {0, 0}, 1.0), std::exp(-1.0), 1e-15);
  EXPECT_EQ(bump_value({1, 0}, {0, 0}, 1.0), 0.0);
  EXPECT_EQ(bump_value({2, 0}, {0, 0}, 1.0), 0.0);
  EXPECT_NEAR(bump_value({0.5, 0}, {0, 0}, 1.0), std::exp(-4.0 / 3.0), 1e-15);
}

TEST(Bump, LaplacianAtCentre) {
  EXPECT_NEAR(bump_laplacian({0, 0}, {0, 0}, 1.0, 2), -4.0 * std::exp(-1.0), 1e-12);
  EXPECT_NEAR(bump_laplacian({0, 0}, {0, 0}, 1.0, 1), -2.0 * std::exp(-1.0), 1e-12);
}

TEST(Bump, LaplacianMatchesFiniteDifferences) {
  for (int dim : {1, 2}) {
    for (double r : {0.0, 0.1, 0.3, 0.5, 0.7, 0.8}) {
      const Point x{r * 0.6, dim == 2 ? r * 0.8 : 0.0};
      const double closed = bump_laplacian(x, {0, 0}, 1.0, dim);
      const double fd = fd_laplacian(x, {0, 0}, 1.0, dim);
      EXPECT_NEAR(closed, fd, 5e-6 * std::max(1.0, std::abs(fd))) << "dim " << dim << " r " << r;
    }
  }
}

// Faster than any power: |Lap phi| / gap^k keeps shrinking as gap -> 0.
TEST(Bump, LaplacianVanishesAtRim) {
  for (int k : {2, 4, 8}) {
    double prev = INFINITY;
    for (double gap : {2e-2, 1e-2, 5e-3, 2e-3}) {
      const double ratio = std::abs(bump_laplacian_radial(1.0 - gap, 1.0, 2)) / std::pow(gap, k);
      EXPECT_LT(ratio, prev) << "k " << k << " gap " << gap;
      prev = ratio;
    }
    EXPECT_LT(prev, 1e-50);
  }
  EXPECT_EQ(bump_laplacian_radial(1.0, 1.0, 2), 0.0);
}

TEST(EstimateC, RegressionAndDensity) {
  const double c1 = estimate_C(1.0, 2, 0.5);
  const double c2 = estimate_C(1.0, 2, 0.5, 20000);
  EXPECT_GT(c1, 0.0);
  EXPECT_NEAR(c1, kC_R1_dim2_s05, 1e-3 * kC_R1_dim2_s05);
  EXPECT_LT(std::abs(c2 - c1), 0.01 * c1);
}

TEST(EstimateC, ExponentScaling) {
  const double phi_max = std::exp(-1.0);
  const double s = 0.5, s2 = 0.75;
  EXPECT_GE(estimate_C(1.0, 2, s2) * (1 + 1e-12), estimate_C(1.0, 2, s) / std::pow(phi_max, s2 - s));
}

TEST(ChooseEta, Examples) {
  const double e1 = std::exp(-1.0);
  EXPECT_NEAR(choose_eta({2.0, 1.0, 1.0, 0.5, 1.0, 1.0, e1}), 0.225, 1e-15);
  EXPECT_LE(choose_eta({1.0, 1.0, 1.0, 0.3, 100.0, 100.0, 1e-3}), 0.9);
  EXPECT_NEAR(choose_eta({1e-6, 1.0, 1.0, 0.5, 1e-3, 1.0, e1}), 0.5e-3 / e1, 1e-15);
}

TEST(BuildSubsolution, LaneEmdenCertificate) {
  const auto spec = lane_emden_square(1.0 / 32.0);
  const auto cert = build_subsolution(spec, 1.0);
  EXPECT_LT(cert.h_sup, 1.0);
  EXPECT_GT(cert.h_sup, 0.0);
  EXPECT_LE(cert.max_discrete_violation, 1e-10);
  EXPECT_LE(subsolution_violation(spec, cert.h), 1e-10);
  for (double link : cert.chain_links) EXPECT_LE(link, 1e-10);
  EXPECT_LE(cert.C * std::pow(cert.eta, 1 - cert.s), 0.95 * spec.ball().Lambda_lower);
  for (std::size_t node = 0; node < cert.h.size(); ++node) {
    if (!spec.grid().is_interior(node)) EXPECT_EQ(cert.h[node], 0.0);
  }
}

TEST(BuildSubsolution, DeltaCapsHeight) {
  const auto spec = lane_emden_square(1.0 / 32.0);
  EXPECT_LT(build_subsolution(spec, 1e-6).h_sup, 1e-6);
  EXPECT_THROW(build_subsolution(spec, 0.0), std::invalid_argument);
}

TEST(BuildSubsolution, ViolationDetectsNonSubsolution) {
  const auto spec = lane_emden_square(1.0 / 16.0);
  auto g = spec.grid_ptr();
  const auto tall = ScalarField::sample(
      g, [](Point p) { return 5.0 * std::sin(M_PI * p.x) * std::sin(M_PI * p.y); }, true);
  EXPECT_GT(subsolution_violation(spec, tall), 0.0);
}
