#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sublinear/conditions.hpp"
#include "helpers.hpp"

using namespace sublinear;
using sublinear::testing::kHalfHalf;
using sublinear::testing::single;

TEST(Nonlinearity, LaneEmdenValues) {
  const auto sys = lane_emden_system(kHalfHalf);
  const double z[] = {0.25, 0.81};
  EXPECT_DOUBLE_EQ(sys.evaluate(0, z), 0.9);
  EXPECT_DOUBLE_EQ(sys.evaluate(1, z), 0.5);
}

TEST(Nonlinearity, PowerExpAtOne) {
  const Nonlinearity f(PowerExp{0, 0.5, 1.0, 1.0});
  const double z[] = {1.0};
  EXPECT_NEAR(f(z), std::numbers::e, 1e-15);
}

TEST(Nonlinearity, StepIsOpenOnTheLeft) {
  const Nonlinearity left(StepSum{0.0, {}, {Step{0, 1.0, 1.0, false}}});
  const Nonlinearity right(StepSum{0.0, {}, {Step{0, 1.0, 1.0, true}}});
  const double at[] = {1.0}, above[] = {1.0 + 1e-12};
  EXPECT_EQ(left(at), 0.0);
  EXPECT_EQ(left(above), 1.0);
  EXPECT_EQ(right(at), 1.0);
  EXPECT_EQ(left.kind(), NonlinearityKind::left_continuous_step);
  EXPECT_FALSE(left.is_holder_continuous());
  ASSERT_EQ(left.breakpoints().size(), 1u);
}

TEST(Nonlinearity, TableInterpolates) {
  const Nonlinearity f(TabulatedMonotone{0, {0, 1, 2}, {0, 1, 4}});
  const double a[] = {1.5}, b[] = {5.0}, c[] = {-1.0};
  EXPECT_DOUBLE_EQ(f(a), 2.5);
  EXPECT_DOUBLE_EQ(f(b), 4.0);
  EXPECT_DOUBLE_EQ(f(c), 0.0);
}

TEST(Nonlinearity, RejectsBadParameters) {
  EXPECT_THROW(Nonlinearity(PowerProduct{1.0, {{3, 0.5}}}).validate(2), std::invalid_argument);
  EXPECT_THROW(Nonlinearity(PowerExp{0, 1.5, 1.0, 1.0}).validate(1), std::invalid_argument);
  EXPECT_THROW(Nonlinearity(TabulatedMonotone{0, {0, 1}, {1, 0}}).validate(1), std::invalid_argument);
  EXPECT_THROW(Nonlinearity(StepSum{0.0, {}, {Step{0, 1.0, -1.0}}}).validate(1), std::invalid_argument);
  const double bad[] = {NAN};
  EXPECT_THROW(Nonlinearity(PowerSum{1.0, {}})(bad), std::invalid_argument);
}

TEST(Nonlinearity, KindNamesRoundTrip) {
  for (auto k : {NonlinearityKind::power_product, NonlinearityKind::power_sum, NonlinearityKind::power_exp,
                 NonlinearityKind::left_continuous_step, NonlinearityKind::custom_table}) {
    EXPECT_EQ(nonlinearity_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(nonlinearity_kind_from_string("cubic"), std::invalid_argument);
}

// Condition checkers against their documented pass/fail cases.

TEST(Conditions, GrowthLaneEmdenEqualityPasses) {
  EXPECT_TRUE(verify_growth(lane_emden_system(kHalfHalf), {}).pass);
}

TEST(Conditions, GrowthPowerExpFails) {
  const auto sys = single(Nonlinearity(PowerExp{0, 0.5, 1.0, 1.0}), GrowthEnvelope{{{50.0}}, {{0.9}}, 50.0});
  const auto rep = verify_growth(sys, {});
  EXPECT_FALSE(rep.pass);
  EXPECT_NE(rep.note.find("(a')"), std::string::npos);
}

TEST(Conditions, GrowthBoundedStepPasses) {
  const auto sys = single(Nonlinearity(StepSum{0.0, {}, {Step{0, 1.0, 1.0}}}),
                          GrowthEnvelope{{{0.0}}, {{0.5}}, 1.0});
  EXPECT_TRUE(verify_growth(sys, {}).pass);
}

TEST(Conditions, GrowthUndeclaredFails) {
  const auto sys = single(Nonlinearity(PowerSum{0.0, {{0, 1.0, 0.5}}}), std::nullopt);
  EXPECT_FALSE(verify_growth(sys, {}).pass);
}

TEST(Conditions, LowerEnvelope) {
  auto sys = lane_emden_system(kHalfHalf);
  EXPECT_TRUE(verify_lower_envelope(sys, {}).pass);
  sys.lower.A[0][1] = 2.0;
  const auto rep = verify_lower_envelope(sys, {});
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.worst_equation, 0u);

  const auto stepped = single(Nonlinearity(StepSum{0.0, {{0, 1.0, 0.5}}, {Step{0, 0.3, 0.5}}}),
                              GrowthEnvelope{{{1.0}}, {{0.5}}, 0.5});
  EXPECT_TRUE(verify_lower_envelope(stepped, {}).pass);
}

TEST(Conditions, Cooperative) {
  EXPECT_TRUE(verify_cooperative(lane_emden_system(kHalfHalf), {}).pass);
  NonlinearSystem decreasing = lane_emden_system(kHalfHalf);
  decreasing.f[0] = Nonlinearity(PowerSum{0.0, {{1, -1.0, 1.0}}});
  EXPECT_FALSE(verify_cooperative(decreasing, {}).pass);
  EXPECT_TRUE(verify_cooperative(single(Nonlinearity(PowerSum{2.0, {}}), std::nullopt), {}).pass);
}

TEST(Conditions, ContinuityFromBelow) {
  const auto left = single(Nonlinearity(StepSum{0.0, {}, {Step{0, 1.0, 1.0, false}}}), std::nullopt);
  const auto right = single(Nonlinearity(StepSum{0.0, {}, {Step{0, 1.0, 1.0, true}}}), std::nullopt);
  EXPECT_TRUE(verify_continuity_from_below(left, {}).pass);
  const auto rep = verify_continuity_from_below(right, {});
  EXPECT_FALSE(rep.pass);
  EXPECT_NEAR(rep.worst_point.at(0), 1.0, 1e-12);
  for (const auto& f : {Nonlinearity(PowerExp{0, 0.5, 1.0, 1.0}),
                        Nonlinearity(TabulatedMonotone{0, {0, 1, 2}, {0, 1, 4}}),
                        Nonlinearity(PowerSum{0.0, {{0, 1.0, 0.3}}})}) {
    EXPECT_TRUE(verify_continuity_from_below(single(f, std::nullopt), {}).pass);
  }
}

TEST(Conditions, SeededAndDeterministic) {
  const auto sys = lane_emden_system(kHalfHalf);
  SamplingOptions a, b;
  b.seed = 99;
  const auto r1 = verify_all(sys, a), r2 = verify_all(sys, a), r3 = verify_all(sys, b);
  ASSERT_EQ(r1.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(r1[i].samples, r2[i].samples);
    EXPECT_EQ(r1[i].max_violation, r2[i].max_violation);
    EXPECT_TRUE(r3[i].pass);
  }
}
