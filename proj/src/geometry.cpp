#include "cpinn/geometry.hpp"

#include <stdexcept>

namespace cpinn::geom {

RectDomain::RectDomain(Point lower, Point upper) : lo(lower), hi(upper) {
  if (!(lo[0] < hi[0] && lo[1] < hi[1]))
    throw std::invalid_argument("domain corners must satisfy lower < upper componentwise");
}

CollocationSets build_grids(const RectDomain& dom, int N) {
  if (N < 2) throw std::invalid_argument("grid parameter N must be >= 2");
  CollocationSets sets;
  sets.domain = dom;
  sets.N = N;
  const double hx = dom.width() / (N - 1);
  const double hy = dom.height() / (N - 1);
  sets.spacing = hx;
  sets.interior.reserve(static_cast<std::size_t>(N) * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      sets.interior.push_back({dom.lo[0] + i * hx, dom.lo[1] + j * hy});
  // boundary ring traced once, each corner appearing exactly once
  sets.boundary.reserve(4 * (N - 1));
  for (int i = 0; i < N - 1; ++i)  // bottom, left to right
    sets.boundary.push_back({dom.lo[0] + i * hx, dom.lo[1]});
  for (int j = 0; j < N - 1; ++j)  // right, bottom to top
    sets.boundary.push_back({dom.hi[0], dom.lo[1] + j * hy});
  for (int i = 0; i < N - 1; ++i)  // top, right to left
    sets.boundary.push_back({dom.hi[0] - i * hx, dom.hi[1]});
  for (int j = 0; j < N - 1; ++j)  // left, top to bottom
    sets.boundary.push_back({dom.lo[0], dom.hi[1] - j * hy});
  return sets;
}

std::vector<Point> eval_grid(const RectDomain& dom, int M) {
  if (M < 2) throw std::invalid_argument("eval grid resolution must be >= 2");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(M) * M);
  const double hx = dom.width() / (M - 1);
  const double hy = dom.height() / (M - 1);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      pts.push_back({dom.lo[0] + i * hx, dom.lo[1] + j * hy});
  return pts;
}

std::vector<Point> midpoint_grid(const RectDomain& dom, int M) {
  if (M < 2) throw std::invalid_argument("midpoint grid resolution must be >= 2");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(M) * M);
  const double hx = dom.width() / M;
  const double hy = dom.height() / M;
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      pts.push_back({dom.lo[0] + (i + 0.5) * hx, dom.lo[1] + (j + 0.5) * hy});
  return pts;
}

}  // namespace cpinn::geom
