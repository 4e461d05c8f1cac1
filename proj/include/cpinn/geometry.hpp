#pragma once

#include <array>
#include <vector>

namespace cpinn::geom {

using Point = std::array<double, 2>;

struct RectDomain {
  Point lo{0.0, 0.0};
  Point hi{1.0, 1.0};

  RectDomain() = default;
  RectDomain(Point lower, Point upper);

  double width() const { return hi[0] - lo[0]; }
  double height() const { return hi[1] - lo[1]; }
  double area() const { return width() * height(); }
  double perimeter() const { return 2.0 * (width() + height()); }
  bool contains(const Point& p) const {
    return p[0] >= lo[0] && p[0] <= hi[0] && p[1] >= lo[1] && p[1] <= hi[1];
  }
};

/// Interior grid X (the full N x N tensor grid over the closed domain,
/// m_tilde = N^2 points) and boundary grid Y (the grid's boundary ring traced
/// once with corners deduplicated, m_bar = 4(N-1) points).
struct CollocationSets {
  RectDomain domain;
  int N = 0;
  std::vector<Point> interior;
  std::vector<Point> boundary;
  double spacing = 0.0;  // grid step h = width / (N-1)

  int m_interior() const { return static_cast<int>(interior.size()); }
  int m_boundary() const { return static_cast<int>(boundary.size()); }
};

CollocationSets build_grids(const RectDomain& dom, int N);

/// M x M uniform tensor grid over the closed domain (error quadrature,
/// heatmap rasters).
std::vector<Point> eval_grid(const RectDomain& dom, int M);

/// M x M grid of cell midpoints (no points on the boundary). Used where a
/// sampled mean has to track the continuous integral closely.
std::vector<Point> midpoint_grid(const RectDomain& dom, int M);

}  // namespace cpinn::geom
