#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cpinn/geometry.hpp"

using namespace cpinn;
using geom::Point;
using geom::RectDomain;

TEST_CASE("grid counts: N = 5 on the unit square") {
  const auto sets = geom::build_grids(RectDomain({0, 0}, {1, 1}), 5);
  CHECK(sets.m_interior() == 25);
  CHECK(sets.m_boundary() == 16);
}

TEST_CASE("grid counts: N = 10 has a 36-point ring") {
  const auto sets = geom::build_grids(RectDomain({0, 0}, {1, 1}), 10);
  CHECK(sets.m_boundary() == 36);
  // the ring count reproduces the residual table: 36^-2
  CHECK(1.0 / (36.0 * 36.0) == doctest::Approx(7.71e-4).epsilon(5e-3));
}

TEST_CASE("N = 2 boundary is exactly the four corners") {
  const auto sets = geom::build_grids(RectDomain({0, 0}, {1, 1}), 2);
  CHECK(sets.m_boundary() == 4);
  const std::vector<Point> expect = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (const auto& e : expect) {
    const bool found = std::any_of(sets.boundary.begin(), sets.boundary.end(), [&](const Point& p) {
      return p[0] == e[0] && p[1] == e[1];
    });
    CHECK(found);
  }
}

TEST_CASE("all collocation points lie in the closed domain, boundary on its edge") {
  const RectDomain dom({-1, -1}, {1, 1});
  const auto sets = geom::build_grids(dom, 8);
  for (const auto& p : sets.interior) CHECK(dom.contains(p));
  for (const auto& p : sets.boundary) {
    CHECK(dom.contains(p));
    const bool on_edge = p[0] == dom.lo[0] || p[0] == dom.hi[0] || p[1] == dom.lo[1] ||
                         p[1] == dom.hi[1];
    CHECK(on_edge);
  }
}

TEST_CASE("boundary points are pairwise distinct with the spacing lower bound") {
  const RectDomain dom({0, 0}, {1, 1});
  for (int N : {2, 3, 5, 12}) {
    const auto sets = geom::build_grids(dom, N);
    const int mb = sets.m_boundary();
    double min_dist = 1e300;
    for (int i = 0; i < mb; ++i)
      for (int j = i + 1; j < mb; ++j) {
        const double dx = sets.boundary[i][0] - sets.boundary[j][0];
        const double dy = sets.boundary[i][1] - sets.boundary[j][1];
        min_dist = std::min(min_dist, std::sqrt(dx * dx + dy * dy));
      }
    CHECK(min_dist >= dom.perimeter() / (2.0 * mb));
  }
}

TEST_CASE("grids are symmetric under axis reflection") {
  const RectDomain dom({0, 0}, {1, 1});
  const auto sets = geom::build_grids(dom, 7);
  auto contains = [&](const std::vector<Point>& pts, const Point& q) {
    return std::any_of(pts.begin(), pts.end(), [&](const Point& p) {
      return std::fabs(p[0] - q[0]) < 1e-14 && std::fabs(p[1] - q[1]) < 1e-14;
    });
  };
  for (const auto& p : sets.interior) {
    CHECK(contains(sets.interior, {1.0 - p[0], p[1]}));
    CHECK(contains(sets.interior, {p[0], 1.0 - p[1]}));
  }
  for (const auto& p : sets.boundary) {
    CHECK(contains(sets.boundary, {1.0 - p[0], p[1]}));
    CHECK(contains(sets.boundary, {p[0], 1.0 - p[1]}));
  }
}

TEST_CASE("eval grid counts and bounds") {
  const RectDomain dom({0, 0}, {1, 1});
  CHECK(geom::eval_grid(dom, 2).size() == 4);
  CHECK(geom::eval_grid(dom, 201).size() == 40401);
  for (const auto& p : geom::eval_grid(dom, 17)) CHECK(dom.contains(p));
  for (const auto& p : geom::midpoint_grid(dom, 9)) {
    CHECK(p[0] > 0.0);
    CHECK(p[0] < 1.0);
  }
}

TEST_CASE("preconditions are enforced") {
  CHECK_THROWS(geom::build_grids(RectDomain({0, 0}, {1, 1}), 1));
  CHECK_THROWS(geom::eval_grid(RectDomain({0, 0}, {1, 1}), 1));
  CHECK_THROWS(RectDomain({1, 0}, {0, 1}));
}
