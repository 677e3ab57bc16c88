#include "sublinear/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace sublinear {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

std::size_t cell_count(double extent, double spacing, const char* axis) {
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw std::invalid_argument(std::string("degenerate ") + axis + " extent");
  }
  const double ratio = extent / spacing;
  // Off-lattice extents snap to the nearest whole cell count.
  const double rounded = std::round(ratio);
  if (rounded < 2.0) {
    throw std::invalid_argument(std::string("spacing too coarse for the ") + axis +
                                " extent: no interior node");
  }
  return static_cast<std::size_t>(rounded);
}

void check_spacing(double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw std::invalid_argument("spacing must be positive and finite");
  }
}

}  // namespace

class GridBuilder {
 public:
  static std::shared_ptr<Grid> blank(double spacing, std::size_t nx, std::size_t ny, Point origin,
                                     int dimension) {
    auto grid = std::shared_ptr<Grid>(new Grid());
    grid->spacing_ = spacing;
    grid->nx_ = nx;
    grid->ny_ = ny;
    grid->origin_ = origin;
    grid->dimension_ = dimension;
    grid->mask_.assign(nx * ny, 0);
    return grid;
  }

  static std::vector<std::uint8_t>& mask(Grid& g) { return g.mask_; }

  // Derives the unknown numbering and slab diameter from the mask.
  static void finalize(Grid& g) {
    g.interior_.clear();
    g.unknown_.assign(g.node_count(), Grid::npos);
    std::size_t imin = g.nx_, imax = 0, jmin = g.ny_, jmax = 0;
    for (std::size_t node = 0; node < g.node_count(); ++node) {
      if (!g.mask_[node]) continue;
      g.unknown_[node] = static_cast<std::ptrdiff_t>(g.interior_.size());
      g.interior_.push_back(node);
      imin = std::min(imin, g.column(node));
      imax = std::max(imax, g.column(node));
      jmin = std::min(jmin, g.row(node));
      jmax = std::max(jmax, g.row(node));
    }
    if (g.interior_.empty()) {
      throw std::invalid_argument("grid has an empty interior");
    }
    const double wx = (static_cast<double>(imax - imin) + 2.0) * g.spacing_;
    const double wy = (static_cast<double>(jmax - jmin) + 2.0) * g.spacing_;
    g.slab_diameter_ = g.dimension_ == 1 ? wx : std::min(wx, wy);
  }
};

Point Grid::coordinate(std::size_t node) const {
  return {origin_.x + spacing_ * static_cast<double>(column(node)),
          origin_.y + spacing_ * static_cast<double>(row(node))};
}

std::array<std::size_t, 4> Grid::neighbours(std::size_t node) const {
  if (dimension_ == 1) return {node - 1, node + 1, node, node};
  return {node - 1, node + 1, node - nx_, node + nx_};
}

std::optional<std::size_t> Grid::node_at(Point p) const {
  const double fi = (p.x - origin_.x) / spacing_;
  const double fj = (p.y - origin_.y) / spacing_;
  const double ri = std::round(fi);
  const double rj = std::round(fj);
  if (std::abs(fi - ri) > 1e-9 || std::abs(fj - rj) > 1e-9) return std::nullopt;
  if (ri < 0 || rj < 0 || ri >= static_cast<double>(nx_) || rj >= static_cast<double>(ny_)) {
    return std::nullopt;
  }
  return index(static_cast<std::size_t>(ri), static_cast<std::size_t>(rj));
}

double Grid::distance_to_exterior(Point p) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t node = 0; node < node_count(); ++node) {
    if (mask_[node]) continue;
    best = std::min(best, distance(p, coordinate(node)));
  }
  return best;
}

bool Grid::operator==(const Grid& other) const {
  return spacing_ == other.spacing_ && nx_ == other.nx_ && ny_ == other.ny_ &&
         origin_.x == other.origin_.x && origin_.y == other.origin_.y &&
         dimension_ == other.dimension_ && mask_ == other.mask_;
}

GridPtr build_rectangle(Interval x_extent, Interval y_extent, double spacing) {
  check_spacing(spacing);
  const std::size_t cx = cell_count(x_extent.length(), spacing, "x");
  const std::size_t cy = cell_count(y_extent.length(), spacing, "y");
  auto grid = GridBuilder::blank(spacing, cx + 1, cy + 1, {x_extent.lo, y_extent.lo}, 2);
  auto& mask = GridBuilder::mask(*grid);
  for (std::size_t j = 1; j < cy; ++j) {
    for (std::size_t i = 1; i < cx; ++i) mask[grid->index(i, j)] = 1;
  }
  GridBuilder::finalize(*grid);
  return grid;
}

GridPtr build_masked(const std::function<bool(Point)>& indicator, Rectangle box, double spacing) {
  check_spacing(spacing);
  const std::size_t cx = cell_count(box.x.length(), spacing, "x");
  const std::size_t cy = cell_count(box.y.length(), spacing, "y");
  const std::size_t nx = cx + 1;
  const std::size_t ny = cy + 1;
  auto grid = GridBuilder::blank(spacing, nx, ny, {box.x.lo, box.y.lo}, 2);

  std::vector<std::uint8_t> inside(nx * ny, 0);
  for (std::size_t node = 0; node < nx * ny; ++node) {
    inside[node] = indicator(grid->coordinate(node)) ? 1 : 0;
  }

  std::vector<std::uint8_t> candidate(nx * ny, 0);
  for (std::size_t j = 1; j + 1 < ny; ++j) {
    for (std::size_t i = 1; i + 1 < nx; ++i) {
      const std::size_t n = grid->index(i, j);
      candidate[n] = inside[n] && inside[n - 1] && inside[n + 1] && inside[n - nx] && inside[n + nx];
    }
  }

  // Keep the largest 4-connected component (first one found on ties).
  std::vector<int> label(nx * ny, -1);
  std::vector<std::size_t> sizes;
  for (std::size_t start = 0; start < nx * ny; ++start) {
    if (!candidate[start] || label[start] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    std::size_t count = 0;
    std::queue<std::size_t> frontier;
    frontier.push(start);
    label[start] = id;
    while (!frontier.empty()) {
      const std::size_t n = frontier.front();
      frontier.pop();
      ++count;
      for (std::size_t m : grid->neighbours(n)) {
        if (candidate[m] && label[m] < 0) {
          label[m] = id;
          frontier.push(m);
        }
      }
    }
    sizes.push_back(count);
  }
  if (sizes.empty()) {
    throw std::invalid_argument("masked domain has an empty interior");
  }
  const int keep = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  auto& mask = GridBuilder::mask(*grid);
  for (std::size_t n = 0; n < nx * ny; ++n) mask[n] = label[n] == keep ? 1 : 0;
  GridBuilder::finalize(*grid);
  return grid;
}

GridPtr truncate_strip(double strip_halfwidth, double length, double spacing) {
  if (!(strip_halfwidth > 0.0)) throw std::invalid_argument("strip halfwidth must be positive");
  if (!(length >= 4.0 * strip_halfwidth)) {
    throw std::invalid_argument("truncation length must be at least 4 * halfwidth");
  }
  return build_rectangle({-0.5 * length, 0.5 * length}, {-strip_halfwidth, strip_halfwidth},
                         spacing);
}

GridPtr build_interval(Interval extent, double spacing) {
  check_spacing(spacing);
  const std::size_t cx = cell_count(extent.length(), spacing, "x");
  auto grid = GridBuilder::blank(spacing, cx + 1, 1, {extent.lo, 0.0}, 1);
  auto& mask = GridBuilder::mask(*grid);
  for (std::size_t i = 1; i < cx; ++i) mask[i] = 1;
  GridBuilder::finalize(*grid);
  return grid;
}

}  // namespace sublinear
