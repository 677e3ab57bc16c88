#include "sublinear/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sublinear {

ScalarField::ScalarField(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw std::invalid_argument("field requires a grid");
  values_.assign(grid_->node_count(), 0.0);
}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("field requires a grid");
  if (values_.size() != grid_->node_count()) {
    throw std::invalid_argument("field size does not match grid node count");
  }
}

ScalarField ScalarField::sample(GridPtr grid, const std::function<double(Point)>& fn,
                                bool interior_only) {
  ScalarField field(std::move(grid));
  const Grid& g = field.grid();
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    if (interior_only && !g.is_interior(node)) continue;
    field.values_[node] = fn(g.coordinate(node));
  }
  return field;
}

ScalarField ScalarField::constant(GridPtr grid, double value, bool interior_only) {
  return sample(std::move(grid), [value](Point) { return value; }, interior_only);
}

double ScalarField::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

bool ScalarField::aligned_with(const Grid& other) const {
  return grid_.get() == &other || *grid_ == other;
}

ScalarField& ScalarField::operator*=(double factor) {
  for (double& v : values_) v *= factor;
  return *this;
}

double sup_distance(const ScalarField& a, const ScalarField& b) {
  if (!a.aligned_with(b.grid())) throw std::invalid_argument("fields are not aligned");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double min_difference(const ScalarField& a, const ScalarField& b) {
  if (!a.aligned_with(b.grid())) throw std::invalid_argument("fields are not aligned");
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) d = std::min(d, a[i] - b[i]);
  return d;
}

}  // namespace sublinear
