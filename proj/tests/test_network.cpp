#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "cpinn/network.hpp"

using namespace cpinn;
using net::Activation;
using net::InitScheme;
using net::MlpNetwork;

TEST_CASE("identical seeds give bitwise-identical parameters") {
  const auto a = MlpNetwork::init({2, 15, 15, 15, 1}, InitScheme::mixed, 42);
  const auto b = MlpNetwork::init({2, 15, 15, 15, 1}, InitScheme::mixed, 42);
  CHECK(a.pack_params() == b.pack_params());
  const auto c = MlpNetwork::init({2, 15, 15, 15, 1}, InitScheme::mixed, 43);
  CHECK(a.pack_params() != c.pack_params());
}

TEST_CASE("He initialization reproduces its variance on fan_in 15") {
  // one wide layer gives > 10^4 draws
  const auto n = MlpNetwork::init({15, 700}, InitScheme::he, 7);
  const auto& W = n.weight(0);
  const double mean = W.mean();
  const double var = (W.array() - mean).square().mean();
  CHECK(var == doctest::Approx(2.0 / 15.0).epsilon(0.10));
}

TEST_CASE("Xavier draws stay inside the stated bounds") {
  const auto n = MlpNetwork::init({15, 15, 15}, InitScheme::xavier, 3);
  const double bound = std::sqrt(6.0 / 30.0);
  for (int l = 0; l < n.num_layers(); ++l)
    CHECK(n.weight(l).array().abs().maxCoeff() <= bound);
}

TEST_CASE("biases start at zero") {
  const auto n = MlpNetwork::init({2, 15, 15, 15, 1}, InitScheme::mixed, 1);
  for (int l = 0; l < n.num_layers(); ++l) CHECK(n.bias(l).norm() == 0.0);
}

TEST_CASE("parameter count of the 2-15-15-15-1 architecture is 541") {
  const MlpNetwork n({2, 15, 15, 15, 1}, Activation::relu3, Activation::tanh_out);
  CHECK(n.parameter_count() == 541);
}

TEST_CASE("zero network evaluates to tanh(0) = 0 everywhere") {
  const MlpNetwork n({2, 15, 15, 15, 1}, Activation::relu3, Activation::tanh_out);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < 50; ++k) CHECK(n.forward(unif(rng), unif(rng))[0] == 0.0);
}

TEST_CASE("softplus output transform keeps every value nonnegative") {
  auto n = MlpNetwork::init({2, 15, 15, 15, 1}, InitScheme::mixed, 19, Activation::relu3,
                            Activation::softplus, 3.0);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int k = 0; k < 1000; ++k) CHECK(n.forward(unif(rng), unif(rng))[0] >= 0.0);
}

TEST_CASE("hand-built single-unit net computes tanh(relu(x)^3)") {
  // first layer picks x1; the two 1-wide hidden layers pass the cube through
  // weights 1; output applies tanh
  MlpNetwork n({2, 1, 1, 1}, Activation::relu3, Activation::tanh_out);
  n.weight(0)(0, 0) = 1.0;  // z = x
  n.weight(1)(0, 0) = 1.0;  // relu(x)^3 forwarded; next relu3 cubes again
  n.weight(2)(0, 0) = 1.0;
  // ReLU^3 applied twice gives x^9; use a one-hidden-layer net instead
  MlpNetwork m({2, 1, 1}, Activation::relu3, Activation::tanh_out);
  m.weight(0)(0, 0) = 1.0;
  m.weight(1)(0, 0) = 1.0;
  const double got = m.forward(0.5, 0.33)[0];
  CHECK(got == doctest::Approx(std::tanh(0.125)).epsilon(1e-15));
  CHECK(got == doctest::Approx(0.12435300177159619).epsilon(1e-12));
}

TEST_CASE("forward jets agree with plain forward values") {
  const auto n = MlpNetwork::init({2, 15, 15, 15, 2}, InitScheme::mixed, 5, Activation::relu3,
                                  Activation::tanh_out, 2.5);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  ad::Jet jets[2];
  for (int k = 0; k < 30; ++k) {
    const double x = unif(rng), y = unif(rng);
    const Eigen::VectorXd v = n.forward(x, y);
    n.forward_jets(x, y, jets);
    CHECK(jets[0].v == doctest::Approx(v[0]).epsilon(1e-15));
    CHECK(jets[1].v == doctest::Approx(v[1]).epsilon(1e-15));
  }
}

TEST_CASE("snapshot round-trips bitwise") {
  const auto n = MlpNetwork::init({2, 15, 15, 15, 1}, InitScheme::mixed, 77, Activation::relu3,
                                  Activation::softplus, 4.5);
  const std::string path = (std::filesystem::temp_directory_path() / "cpinn_net_test.bin").string();
  n.save_snapshot(path);
  const MlpNetwork back = MlpNetwork::load_snapshot(path);
  CHECK(back.widths() == n.widths());
  CHECK(back.output_activation() == n.output_activation());
  CHECK(back.output_scale() == n.output_scale());
  CHECK(back.seed() == n.seed());
  CHECK(back.pack_params() == n.pack_params());
  std::filesystem::remove(path);
}

TEST_CASE("constructor rejects degenerate architectures") {
  CHECK_THROWS(MlpNetwork({2}, Activation::relu3, Activation::tanh_out));
  CHECK_THROWS(MlpNetwork({2, 0, 1}, Activation::relu3, Activation::tanh_out));
}
