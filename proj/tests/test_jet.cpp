#include <doctest.h>

#include <cmath>
#include <random>

#include "cpinn/jet.hpp"

using namespace cpinn;
using ad::Jet;

namespace {

// central finite differences of a scalar callable, the independent oracle
// for every jet identity below
template <class F>
void fd_jet(F f, double x, double y, double h, double* gx, double* gy, double* hxx, double* hxy,
            double* hyy) {
  *gx = (f(x + h, y) - f(x - h, y)) / (2 * h);
  *gy = (f(x, y + h) - f(x, y - h)) / (2 * h);
  *hxx = (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / (h * h);
  *hyy = (f(x, y + h) - 2 * f(x, y) + f(x, y - h)) / (h * h);
  *hxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h);
}

double rel(double a, double b) {
  return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-8});
}

}  // namespace

TEST_CASE("jet arithmetic matches analytic derivatives of a composed function") {
  auto expr_jet = [](Jet x, Jet y) {
    return ad::sin(x * y) * ad::exp(x - 0.5 * y) + (x * x) / (1.0 + y * y) - ad::tanh(x + y);
  };
  auto expr_val = [&](double x, double y) {
    return expr_jet(Jet(x), Jet(y)).v;  // plain value via constant jets
  };
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(-1.2, 1.2);
  for (int k = 0; k < 50; ++k) {
    const double x = unif(rng), y = unif(rng);
    const Jet j = expr_jet(Jet::variable(x, 0), Jet::variable(y, 1));
    double gx, gy, hxx, hxy, hyy;
    fd_jet(expr_val, x, y, 1e-5, &gx, &gy, &hxx, &hxy, &hyy);
    CHECK(rel(j.g[0], gx) < 1e-6);
    CHECK(rel(j.g[1], gy) < 1e-6);
    CHECK(rel(j.hxx, hxx) < 1e-4);
    CHECK(rel(j.hxy, hxy) < 1e-4);
    CHECK(rel(j.hyy, hyy) < 1e-4);
  }
}

TEST_CASE("affine jets have zero Hessian and the exact gradient") {
  const double w0 = 1.7, w1 = -0.3, b = 0.25;
  const Jet j = w0 * Jet::variable(0.4, 0) + w1 * Jet::variable(0.9, 1) + b;
  CHECK(j.v == doctest::Approx(w0 * 0.4 + w1 * 0.9 + b).epsilon(1e-15));
  CHECK(j.g[0] == w0);
  CHECK(j.g[1] == w1);
  CHECK(j.hxx == 0.0);
  CHECK(j.hxy == 0.0);
  CHECK(j.hyy == 0.0);
}

TEST_CASE("cubic ramp derivatives at t = 1") {
  // max(t,0)^3 at t = 1: value 1, slope 3, curvature 6
  const Jet t = Jet::variable(1.0, 0);
  const Jet a = ad::max0(t) * ad::max0(t) * ad::max0(t);
  CHECK(a.v == doctest::Approx(1.0));
  CHECK(a.g[0] == doctest::Approx(3.0));
  CHECK(a.hxx == doctest::Approx(6.0));
}

TEST_CASE("max0 is identically zero on the closed negative axis") {
  for (double t : {-2.0, -1e-12, 0.0}) {
    const Jet j = ad::max0(Jet::variable(t, 0));
    CHECK(j.v == 0.0);
    CHECK(j.g[0] == 0.0);
    CHECK(j.hxx == 0.0);
  }
}

TEST_CASE("laplacian is the trace of the stored Hessian") {
  const Jet x = Jet::variable(0.3, 0), y = Jet::variable(0.7, 1);
  const Jet f = x * x * y + y * y;  // lap = 2y + 2
  CHECK(f.laplacian() == doctest::Approx(2.0 * 0.7 + 2.0).epsilon(1e-15));
  CHECK(f.hess(0, 1) == f.hess(1, 0));  // symmetric storage by construction
}

TEST_CASE("tanh jet identities") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const double t = unif(rng);
    const Jet j = ad::tanh(Jet::variable(t, 0));
    const double a = std::tanh(t);
    CHECK(j.v == doctest::Approx(a).epsilon(1e-15));
    CHECK(j.g[0] == doctest::Approx(1.0 - a * a).epsilon(1e-14));
    CHECK(j.hxx == doctest::Approx(-2.0 * a * (1.0 - a * a)).epsilon(1e-13));
  }
}
