#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace cpinn::ad {

inline constexpr int kDim = 2;  // spatial dimension; the whole suite is planar

/// Second-order jet of a scalar function of (x, y): value, gradient and
/// symmetric Hessian, propagated exactly through arithmetic and elementary
/// functions. Hessian is stored as the canonical triple (xx, xy, yy), so
/// symmetry holds by construction.
struct Jet {
  double v = 0.0;                       // value
  std::array<double, kDim> g{0.0, 0.0}; // gradient
  double hxx = 0.0, hxy = 0.0, hyy = 0.0;

  Jet() = default;
  explicit Jet(double value) : v(value) {}

  static Jet variable(double value, int axis) {
    if (axis < 0 || axis >= kDim) throw std::invalid_argument("jet axis out of range");
    Jet j(value);
    j.g[axis] = 1.0;
    return j;
  }

  double laplacian() const { return hxx + hyy; }
  double hess(int i, int j) const {
    if (i == 0 && j == 0) return hxx;
    if (i == 1 && j == 1) return hyy;
    return hxy;
  }
};

inline Jet operator+(const Jet& a, const Jet& b) {
  Jet r;
  r.v = a.v + b.v;
  r.g = {a.g[0] + b.g[0], a.g[1] + b.g[1]};
  r.hxx = a.hxx + b.hxx;
  r.hxy = a.hxy + b.hxy;
  r.hyy = a.hyy + b.hyy;
  return r;
}

inline Jet operator-(const Jet& a, const Jet& b) {
  Jet r;
  r.v = a.v - b.v;
  r.g = {a.g[0] - b.g[0], a.g[1] - b.g[1]};
  r.hxx = a.hxx - b.hxx;
  r.hxy = a.hxy - b.hxy;
  r.hyy = a.hyy - b.hyy;
  return r;
}

inline Jet operator-(const Jet& a) {
  Jet r;
  r.v = -a.v;
  r.g = {-a.g[0], -a.g[1]};
  r.hxx = -a.hxx;
  r.hxy = -a.hxy;
  r.hyy = -a.hyy;
  return r;
}

inline Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  r.v = a.v * b.v;
  r.g = {a.g[0] * b.v + a.v * b.g[0], a.g[1] * b.v + a.v * b.g[1]};
  r.hxx = a.hxx * b.v + 2.0 * a.g[0] * b.g[0] + a.v * b.hxx;
  r.hxy = a.hxy * b.v + a.g[0] * b.g[1] + a.g[1] * b.g[0] + a.v * b.hxy;
  r.hyy = a.hyy * b.v + 2.0 * a.g[1] * b.g[1] + a.v * b.hyy;
  return r;
}

inline Jet operator+(const Jet& a, double c) { Jet r = a; r.v += c; return r; }
inline Jet operator+(double c, const Jet& a) { return a + c; }
inline Jet operator-(const Jet& a, double c) { Jet r = a; r.v -= c; return r; }
inline Jet operator-(double c, const Jet& a) { return (-a) + c; }

inline Jet operator*(const Jet& a, double c) {
  Jet r;
  r.v = a.v * c;
  r.g = {a.g[0] * c, a.g[1] * c};
  r.hxx = a.hxx * c;
  r.hxy = a.hxy * c;
  r.hyy = a.hyy * c;
  return r;
}
inline Jet operator*(double c, const Jet& a) { return a * c; }
inline Jet operator/(const Jet& a, double c) { return a * (1.0 / c); }

/// Composition with a smooth scalar map given its first three values:
/// f, f' and f'' at a.v (Faa di Bruno up to second order).
inline Jet compose(const Jet& a, double f, double fp, double fpp) {
  Jet r;
  r.v = f;
  r.g = {fp * a.g[0], fp * a.g[1]};
  r.hxx = fpp * a.g[0] * a.g[0] + fp * a.hxx;
  r.hxy = fpp * a.g[0] * a.g[1] + fp * a.hxy;
  r.hyy = fpp * a.g[1] * a.g[1] + fp * a.hyy;
  return r;
}

inline Jet operator/(const Jet& a, const Jet& b) {
  // a / b = a * (1/b)
  const double inv = 1.0 / b.v;
  return a * compose(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}
inline Jet operator/(double c, const Jet& b) { return Jet(c) / b; }

inline Jet sin(const Jet& a) { return compose(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet cos(const Jet& a) { return compose(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Jet exp(const Jet& a) { const double e = std::exp(a.v); return compose(a, e, e, e); }
inline Jet tanh(const Jet& a) {
  const double t = std::tanh(a.v);
  const double tp = 1.0 - t * t;
  return compose(a, t, tp, -2.0 * t * tp);
}
inline Jet sqr(const Jet& a) { return a * a; }

/// max(a, 0) with all derivatives taken as 0 on {a.v <= 0} (limit from below).
inline Jet max0(const Jet& a) {
  if (a.v > 0.0) return a;
  return Jet(0.0);
}

}  // namespace cpinn::ad
