#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace sublinear {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
};

struct Rectangle {
  Interval x;
  Interval y;
};

/// Uniform node-centred grid. Node (i, j) sits at origin + spacing * (i, j);
/// nodes are stored row-major with i fastest. Non-interior nodes are
/// homogeneous Dirichlet nodes (or exterior to a masked domain) and always
/// carry the value 0 in solution fields.
///
/// A grid is immutable once built and is shared between fields through
/// `GridPtr`.
class Grid {
 public:
  static constexpr std::ptrdiff_t npos = -1;

  double spacing() const { return spacing_; }
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t node_count() const { return nx_ * ny_; }
  Point origin() const { return origin_; }
  int dimension() const { return dimension_; }

  /// Minimum over both axes of the interior node extent plus one spacing on
  /// each side. An upper bound on the geometric slab diameter.
  double slab_diameter() const { return slab_diameter_; }

  std::size_t index(std::size_t i, std::size_t j) const { return j * nx_ + i; }
  std::size_t column(std::size_t node) const { return node % nx_; }
  std::size_t row(std::size_t node) const { return node / nx_; }
  Point coordinate(std::size_t node) const;

  bool is_interior(std::size_t node) const { return mask_[node] != 0; }
  std::span<const std::uint8_t> interior_mask() const { return mask_; }

  /// Interior nodes in row-major order; position in this list is the
  /// unknown index used by the linear solvers.
  std::span<const std::size_t> interior_nodes() const { return interior_; }
  std::size_t interior_count() const { return interior_.size(); }

  /// Unknown index of a node, or npos for non-interior nodes.
  std::ptrdiff_t unknown_index(std::size_t node) const { return unknown_[node]; }

  /// Stencil neighbours (west, east, south, north). For 1-D grids only the
  /// first two are meaningful. Every interior node has all of them in range.
  std::array<std::size_t, 4> neighbours(std::size_t node) const;
  std::size_t neighbour_count() const { return dimension_ == 1 ? 2 : 4; }

  /// Node located at `p` (within 1e-9 spacing), if any.
  std::optional<std::size_t> node_at(Point p) const;

  /// Smallest distance from `p` to a non-interior node.
  double distance_to_exterior(Point p) const;

  bool operator==(const Grid& other) const;

 private:
  friend class GridBuilder;
  Grid() = default;

  double spacing_ = 0.0;
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  Point origin_{};
  int dimension_ = 2;
  double slab_diameter_ = 0.0;
  std::vector<std::uint8_t> mask_;
  std::vector<std::size_t> interior_;
  std::vector<std::ptrdiff_t> unknown_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Interior nodes strictly inside the rectangle. Extents that are not an
/// integer number of spacings (to 1e-9 relative) are snapped to the nearest
/// whole number of cells from the lower corner.
GridPtr build_rectangle(Interval x_extent, Interval y_extent, double spacing);

/// Staircase approximation of {indicator > 0}: a node is interior when the
/// indicator holds there and at its four neighbours. Only the largest
/// 4-connected component is kept.
GridPtr build_masked(const std::function<bool(Point)>& indicator, Rectangle bounding_box,
                     double spacing);

/// (-L/2, L/2) x (-halfwidth, halfwidth). Grids with equal halfwidth and
/// spacing are node-aligned, so smaller truncations nest in larger ones.
GridPtr truncate_strip(double strip_halfwidth, double length, double spacing);

/// 1-D interval (a, b) as a single row of nodes with a 3-point stencil.
GridPtr build_interval(Interval extent, double spacing);

}  // namespace sublinear
