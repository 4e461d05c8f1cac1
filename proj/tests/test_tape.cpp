#include <doctest.h>

#include <cmath>
#include <random>

#include "cpinn/tape.hpp"

using namespace cpinn;
using ad::ParamTape;
using ad::Var;

namespace {

// directional finite-difference oracle for d/dtheta of any recorded loss
template <class LossFn>
double fd_directional(net::MlpNetwork& n, LossFn loss, const Eigen::VectorXd& dir, double eps) {
  const Eigen::VectorXd p0 = n.pack_params();
  n.set_params(p0 + eps * dir);
  const double up = loss();
  n.set_params(p0 - eps * dir);
  const double dn = loss();
  n.set_params(p0);
  return (up - dn) / (2.0 * eps);
}

}  // namespace

TEST_CASE("gradient of 0.5 * ||theta||^2 built from parameter leaves is theta") {
  auto n = net::MlpNetwork::init({2, 3, 1}, net::InitScheme::mixed, 4);
  ParamTape tape;
  const int id = tape.add_network(&n);
  const int np = n.parameter_count();
  Var acc = tape.constant(0.0);
  for (int k = 0; k < np; ++k) {
    Var p = tape.param_leaf(id, k);
    acc = acc + 0.5 * p * p;
  }
  const Eigen::VectorXd g = tape.gradient(acc);
  const Eigen::VectorXd theta = n.pack_params();
  CHECK((g - theta).lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("constant loss has zero gradient") {
  auto n = net::MlpNetwork::init({2, 5, 1}, net::InitScheme::mixed, 4);
  ParamTape tape;
  tape.add_network(&n);
  Var c = tape.constant(3.25);
  const Eigen::VectorXd g = tape.gradient(c * c + 1.0);
  CHECK(g.norm() == 0.0);
}

TEST_CASE("parameter gradient of a laplacian-squared loss matches finite differences") {
  auto n = net::MlpNetwork::init({2, 15, 15, 15, 1}, net::InitScheme::mixed, 21,
                                 net::Activation::relu3, net::Activation::tanh_out, 2.0);
  const double x0 = 0.37, y0 = 0.61;
  auto loss_value = [&]() {
    ad::Jet j;
    n.forward_jets(x0, y0, &j);
    const double lap = j.laplacian();
    return lap * lap;
  };
  ParamTape tape;
  const int id = tape.add_network(&n);
  ad::JetVars jv;
  tape.eval(id, x0, y0, &jv);
  Var lap = jv.hxx + jv.hyy;
  const Eigen::VectorXd g = tape.gradient(lap * lap);

  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXd dir(n.parameter_count());
    for (int k = 0; k < dir.size(); ++k) dir[k] = normal(rng);
    dir.normalize();
    const double fd = fd_directional(n, loss_value, dir, 1e-6);
    const double an = g.dot(dir);
    CHECK(std::fabs(fd - an) / std::max({std::fabs(fd), std::fabs(an), 1e-8}) < 1e-5);
  }
}

TEST_CASE("gradient check covers value, gradient and mixed terms together") {
  auto n = net::MlpNetwork::init({2, 15, 15, 15, 2}, net::InitScheme::mixed, 8,
                                 net::Activation::relu3, net::Activation::tanh_out, 1.5);
  const double x0 = 0.52, y0 = 0.18;
  auto loss_value = [&]() {
    ad::Jet j[2];
    n.forward_jets(x0, y0, j);
    return j[0].v * j[0].v + std::fabs(j[1].g[0] * j[0].hxy) + j[1].laplacian();
  };
  ParamTape tape;
  const int id = tape.add_network(&n);
  ad::JetVars jv[2];
  tape.eval(id, x0, y0, jv);
  Var loss = jv[0].v * jv[0].v + ad::absval(jv[1].gx * jv[0].hxy) + (jv[1].hxx + jv[1].hyy);
  CHECK(loss.v == doctest::Approx(loss_value()).epsilon(1e-14));
  const Eigen::VectorXd g = tape.gradient(loss);
  std::mt19937_64 rng(14);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXd dir(n.parameter_count());
    for (int k = 0; k < dir.size(); ++k) dir[k] = normal(rng);
    dir.normalize();
    const double fd = fd_directional(n, loss_value, dir, 1e-6);
    const double an = g.dot(dir);
    CHECK(std::fabs(fd - an) / std::max({std::fabs(fd), std::fabs(an), 1e-8}) < 1e-5);
  }
}

TEST_CASE("per-sample jacobian rows contract against the half-sum-of-squares gradient") {
  auto u = net::MlpNetwork::init({2, 15, 15, 15, 1}, net::InitScheme::mixed, 31);
  auto l = net::MlpNetwork::init({2, 15, 15, 15, 1}, net::InitScheme::mixed, 32);
  ParamTape tape;
  const int uid = tape.add_network(&u);
  const int lid = tape.add_network(&l);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Var> residuals;
  for (int i = 0; i < 10; ++i) {
    const double x = unif(rng), y = unif(rng);
    ad::JetVars ju, jl;
    tape.eval(uid, x, y, &ju);
    tape.eval(lid, x, y, &jl);
    residuals.push_back(ju.hxx + ju.hyy + jl.v);  // mixed-system style residual
  }
  Var half_sq = tape.constant(0.0);
  for (const Var& r : residuals) half_sq = half_sq + 0.5 * r * r;
  const Eigen::VectorXd g = tape.gradient(half_sq);
  const Eigen::MatrixXd J = tape.jacobian(residuals);
  Eigen::VectorXd r(10);
  for (int i = 0; i < 10; ++i) r[i] = residuals[i].v;
  const Eigen::VectorXd jtr = J.transpose() * r;
  CHECK((jtr - g).norm() / g.norm() < 1e-12);
}

TEST_CASE("trivial jacobians from parameter leaves") {
  auto n = net::MlpNetwork::init({2, 2, 2}, net::InitScheme::mixed, 2);
  ParamTape tape;
  const int id = tape.add_network(&n);
  std::vector<Var> residuals = {tape.param_leaf(id, 0), tape.param_leaf(id, 1)};
  const Eigen::MatrixXd J = tape.jacobian(residuals);
  CHECK(J(0, 0) == 1.0);
  CHECK(J(1, 1) == 1.0);
  CHECK(J.sum() == 2.0);
}

TEST_CASE("weighted gradient equals the jacobian contraction") {
  auto n = net::MlpNetwork::init({2, 15, 15, 15, 1}, net::InitScheme::mixed, 12);
  ParamTape tape;
  const int id = tape.add_network(&n);
  std::vector<Var> rs;
  for (int i = 0; i < 6; ++i) {
    ad::JetVars jv;
    tape.eval(id, 0.1 + 0.12 * i, 0.8 - 0.1 * i, &jv);
    rs.push_back(jv.v * jv.v + jv.gx);
  }
  std::vector<double> seeds = {0.3, -1.0, 0.25, 2.0, 0.0, -0.5};
  const Eigen::VectorXd direct = tape.weighted_gradient(rs, seeds);
  const Eigen::MatrixXd J = tape.jacobian(rs);
  const Eigen::VectorXd expect =
      J.transpose() * Eigen::Map<const Eigen::VectorXd>(seeds.data(), 6);
  CHECK((direct - expect).lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("replaying a tape after a parameter mutation throws") {
  auto n = net::MlpNetwork::init({2, 4, 1}, net::InitScheme::mixed, 3);
  ParamTape tape;
  const int id = tape.add_network(&n);
  ad::JetVars jv;
  tape.eval(id, 0.5, 0.5, &jv);
  Var loss = jv.v * jv.v;
  n.set_params(n.pack_params() * 1.01);
  CHECK_THROWS_AS((void)tape.gradient(loss), std::logic_error);
}
