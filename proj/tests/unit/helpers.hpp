#pragma once

#include <vector>

#include "sublinear/system_spec.hpp"

namespace sublinear::testing {

inline const double kHalfHalf[] = {0.5, 0.5};

inline SystemSpec lane_emden_on(GridPtr grid, PositivityBall ball) {
  std::vector<ScalarField> lambdas(2, ScalarField::constant(grid, 1.0, true));
  return SystemSpec::create(grid, lane_emden_system(kHalfHalf), lambdas, ball);
}

inline SystemSpec lane_emden_square(double spacing) {
  return lane_emden_on(build_rectangle({0, 1}, {0, 1}, spacing), {{0.5, 0.5}, 0.25, 1.0});
}

inline NonlinearSystem single(Nonlinearity f, std::optional<GrowthEnvelope> growth,
                              LowerEnvelope lower = {{{1.0}}, {{0.5}}, 1.0}) {
  NonlinearSystem s;
  s.f = {std::move(f)};
  s.growth = std::move(growth);
  s.lower = std::move(lower);
  return s;
}

inline SystemSpec single_on(GridPtr grid, NonlinearSystem sys, double lambda, PositivityBall ball) {
  return SystemSpec::create(grid, std::move(sys), {ScalarField::constant(grid, lambda, true)},
                            ball);
}

}  // namespace sublinear::testing
