#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cpinn/geometry.hpp"
#include "cpinn/norms.hpp"

using namespace cpinn;
using norms::SampledField;

namespace {

constexpr double kPi = std::numbers::pi;

SampledField sample_on(const std::vector<geom::Point>& pts, double (*f)(double, double)) {
  SampledField s;
  s.points = pts;
  s.values.reserve(pts.size());
  for (const auto& p : pts) s.values.push_back(f(p[0], p[1]));
  return s;
}

double sinsin(double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); }
double coord_x(double x, double) { return x; }

}  // namespace

TEST_CASE("discrete L^tau of a constant field is |c| for every tau") {
  SampledField f;
  for (int i = 0; i < 9; ++i) {
    f.points.push_back({0.1 * i, 0.2});
    f.values.push_back(-2.5);
  }
  for (double tau : {1.0, 2.0, 3.5, std::numeric_limits<double>::infinity()})
    CHECK(norms::discrete_ltau(f, tau) == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("discrete L1 of {1,-1,0,2} is 1") {
  SampledField f;
  f.points = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  f.values = {1, -1, 0, 2};
  CHECK(norms::discrete_ltau(f, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("discrete L2 of sin sin tracks the exact 1/2 within 2% at N = 30") {
  const geom::RectDomain dom({0, 0}, {1, 1});
  const auto f = sample_on(geom::midpoint_grid(dom, 30), sinsin);
  CHECK(norms::discrete_ltau(f, 2.0) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("boundary difference quotient on the four corners (brute-force oracle)") {
  // g(x) = x1 on the corners of the unit square, d = 2: twelve ordered pairs,
  // value differences 1 across the four vertical-ish pairs at distance 1 and
  // the two diagonals squared-distance 2: sum = 2*(1 + 1 + 1/2 + 1/2) = 6
  SampledField g;
  g.points = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  g.values = {0, 1, 0, 1};
  const auto r = norms::discrete_hhalf(g, 2);
  CHECK(r.seminorm == doctest::Approx(std::sqrt(6.0 / 16.0)).epsilon(1e-14));
  CHECK(r.seminorm == doctest::Approx(0.6123724356957945).epsilon(1e-12));
  // norm adds the discrete boundary L2 = sqrt(2/4)
  CHECK(r.norm == doctest::Approx(std::sqrt(0.5) + std::sqrt(0.375)).epsilon(1e-14));
}

TEST_CASE("constant boundary field has zero seminorm and |c| norm") {
  SampledField g;
  g.points = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  g.values = {0.7, 0.7, 0.7, 0.7};
  const auto r = norms::discrete_hhalf(g, 2);
  CHECK(r.seminorm == 0.0);
  CHECK(r.norm == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("doubling the field doubles seminorm and norm") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(-1, 1);
  SampledField g;
  const auto sets = geom::build_grids(geom::RectDomain({0, 0}, {1, 1}), 6);
  g.points = sets.boundary;
  for (std::size_t i = 0; i < g.points.size(); ++i) g.values.push_back(unif(rng));
  SampledField g2 = g;
  for (auto& v : g2.values) v *= 2.0;
  const auto a = norms::discrete_hhalf(g, 2);
  const auto b = norms::discrete_hhalf(g2, 2);
  CHECK(b.seminorm == doctest::Approx(2.0 * a.seminorm).epsilon(1e-13));
  CHECK(b.norm == doctest::Approx(2.0 * a.norm).epsilon(1e-13));
}

TEST_CASE("duplicate boundary points are rejected") {
  SampledField g;
  g.points = {{0, 0}, {0, 0}};
  g.values = {1, 2};
  CHECK_THROWS(norms::discrete_hhalf(g, 2));
}

TEST_CASE("discrete H1: constant field") {
  const geom::RectDomain dom({0, 0}, {1, 1});
  const auto pts = geom::midpoint_grid(dom, 20);
  SampledField f;
  f.points = pts;
  f.values.assign(pts.size(), 3.0);
  CHECK(norms::discrete_h1(f, 20, 1.0 / 20) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("discrete H1 of x1 approaches sqrt(4/3) within 1% at N = 30") {
  const geom::RectDomain dom({0, 0}, {1, 1});
  const auto f = sample_on(geom::midpoint_grid(dom, 30), coord_x);
  CHECK(norms::discrete_h1(f, 30, 1.0 / 30) ==
        doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(0.01));
}

TEST_CASE("discrete H1 of sin sin within 2% of the closed form at N = 30") {
  const geom::RectDomain dom({0, 0}, {1, 1});
  const auto f = sample_on(geom::midpoint_grid(dom, 30), sinsin);
  const double exact = std::sqrt(0.25 + kPi * kPi / 2.0);
  CHECK(norms::discrete_h1(f, 30, 1.0 / 30) == doctest::Approx(exact).epsilon(0.02));
}

TEST_CASE("duality pairing: zero multiplier, closed-form mean, signed vs absolute") {
  const geom::RectDomain dom({0, 0}, {1, 1});
  const auto pts = geom::midpoint_grid(dom, 30);
  SampledField lam, gap;
  lam.points = gap.points = pts;
  for (const auto& p : pts) {
    lam.values.push_back(0.0);
    gap.values.push_back(sinsin(p[0], p[1]));
  }
  CHECK(norms::discrete_duality(lam, gap) == 0.0);
  for (auto& v : lam.values) v = 1.0;
  CHECK(norms::discrete_duality(lam, gap) == doctest::Approx(4.0 / (kPi * kPi)).epsilon(0.02));
  SampledField neg = gap;
  for (auto& v : neg.values) v = -1.0;
  SampledField ones = lam;
  CHECK(norms::discrete_duality(ones, neg) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(norms::discrete_duality_abs(ones, neg) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("homogeneity and triangle inequality on random fields") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unif(-2, 2);
  const auto pts = geom::midpoint_grid(geom::RectDomain({0, 0}, {1, 1}), 12);
  SampledField a, b, sum;
  a.points = b.points = sum.points = pts;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    a.values.push_back(unif(rng));
    b.values.push_back(unif(rng));
    sum.values.push_back(a.values.back() + b.values.back());
  }
  for (double tau : {1.0, 2.0, 4.0}) {
    SampledField a3 = a;
    for (auto& v : a3.values) v *= -3.0;
    CHECK(norms::discrete_ltau(a3, tau) ==
          doctest::Approx(3.0 * norms::discrete_ltau(a, tau)).epsilon(1e-12));
    CHECK(norms::discrete_ltau(sum, tau) <=
          norms::discrete_ltau(a, tau) + norms::discrete_ltau(b, tau) + 1e-12);
  }
  CHECK(norms::discrete_h1(sum, 12, 1.0 / 12) <=
        norms::discrete_h1(a, 12, 1.0 / 12) + norms::discrete_h1(b, 12, 1.0 / 12) + 1e-12);
}

TEST_CASE("quadrature consistency: L2 error decays at least first order") {
  const geom::RectDomain dom({0, 0}, {1, 1});
  auto err_at = [&](int N, double (*f)(double, double), double exact) {
    const auto s = sample_on(geom::midpoint_grid(dom, N), f);
    return std::fabs(norms::discrete_ltau(s, 2.0) - exact);
  };
  struct Case {
    double (*f)(double, double);
    double exact;
  };
  const Case cases[] = {
      {sinsin, 0.5},
      {coord_x, std::sqrt(1.0 / 3.0)},
      {[](double x, double y) { return std::exp(x + y); },
       std::sqrt((std::exp(2.0) - 1.0) * (std::exp(2.0) - 1.0) / 4.0)},
  };
  for (const auto& c : cases) {
    const double e10 = err_at(10, c.f, c.exact);
    const double e20 = err_at(20, c.f, c.exact);
    const double e40 = err_at(40, c.f, c.exact);
    CHECK(e20 <= e10 * 0.55);  // at least O(1/N)
    CHECK(e40 <= e20 * 0.55);
  }
}

TEST_CASE("duality consistency: discrete pairing error shrinks as N doubles") {
  const geom::RectDomain dom({0, 0}, {1, 1});
  // lambda = x + y, gap = x^2 y: exact pairing = 17/72
  const double exact = 17.0 / 72.0;
  auto err_at = [&](int N) {
    const auto pts = geom::midpoint_grid(dom, N);
    SampledField lam, gap;
    lam.points = gap.points = pts;
    for (const auto& p : pts) {
      lam.values.push_back(p[0] + p[1]);
      gap.values.push_back(p[0] * p[0] * p[1]);
    }
    return std::fabs(norms::discrete_duality(lam, gap) - exact);
  };
  const double e1 = err_at(10), e2 = err_at(20), e3 = err_at(40);
  CHECK(e2 <= e1 * 1.1);
  CHECK(e3 <= e2 * 1.1);
  CHECK(e3 < e1);
}

TEST_CASE("recovery residual reproduces the six printed table values") {
  const norms::RecoveryExponents exps;  // (2, 2, 3), d = 2
  const int Ns[6] = {5, 10, 15, 20, 25, 30};
  const double printed[6] = {3.90e-3, 7.71e-4, 3.18e-4, 1.73e-4, 1.08e-4, 7.43e-5};
  for (int i = 0; i < 6; ++i) {
    const double got = norms::recovery_residual(Ns[i], exps);
    CHECK(std::fabs(got - printed[i]) / printed[i] < 5e-3);
  }
  CHECK(norms::recovery_residual(5, exps) == doctest::Approx(1.0 / 256.0).epsilon(1e-15));
}

TEST_CASE("large forcing smoothness leaves the boundary term dominant") {
  norms::RecoveryExponents exps;
  exps.s = 50.0;
  exps.s_check = 50.0;
  const double got = norms::recovery_residual(12, exps);
  const double mb = 4.0 * 11.0;
  CHECK(got == doctest::Approx(std::pow(mb, -2.0)).epsilon(1e-14));
}
