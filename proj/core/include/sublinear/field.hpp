#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sublinear/grid.hpp"

namespace sublinear {

/// Nodal values on a grid: a solution component u_l, a coefficient lambda_l
/// or a right-hand side.
class ScalarField {
 public:
  explicit ScalarField(GridPtr grid);
  ScalarField(GridPtr grid, std::vector<double> values);

  /// Samples `fn` at every node, or only at interior nodes (zero elsewhere).
  static ScalarField sample(GridPtr grid, const std::function<double(Point)>& fn,
                            bool interior_only);
  static ScalarField constant(GridPtr grid, double value, bool interior_only);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t node) const { return values_[node]; }
  double& operator[](std::size_t node) { return values_[node]; }
  std::size_t size() const { return values_.size(); }

  double sup_norm() const;
  double min() const;
  double max() const;
  bool all_finite() const;

  /// True when both fields live on the same (or an identical) grid.
  bool aligned_with(const Grid& other) const;

  ScalarField& operator*=(double factor);

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// max over nodes of |a - b|.
double sup_distance(const ScalarField& a, const ScalarField& b);

/// min over nodes of (a - b).
double min_difference(const ScalarField& a, const ScalarField& b);

}  // namespace sublinear
