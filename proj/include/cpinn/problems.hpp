#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cpinn/geometry.hpp"
#include "cpinn/jet.hpp"
#include "cpinn/network.hpp"

namespace cpinn::prob {

enum class Kind { scalar_laplace, elasticity, biharmonic_split };

struct ElasticityParams {
  double E = 1.0;
  double nu = 0.3;
  double lambda_lame() const { return E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)); }
  double mu_lame() const { return E / (2.0 * (1.0 + nu)); }
};

/// One benchmark: exact solution, obstacle, forcing and multiplier in closed
/// form. Boundary data is the trace of the exact solution channels (g1/g2 for
/// the fourth-order problem live in channels 0/1).
struct BenchmarkProblem {
  std::string id;
  Kind kind = Kind::scalar_laplace;
  geom::RectDomain domain;
  int field_dim = 1;       // network output channels for the primal field
  int multiplier_dim = 1;  // multiplier channels = number of constraints
  int equation_dim = 1;    // residual components
  int forcing_dim = 1;     // data components entering the residual
  ElasticityParams elasticity;
  double contact_radius = 0.7;  // exp7 parameter r

  double u_scale = 1.0;       // output scale for the primal network
  double lambda_scale = 1.0;  // output scale for the multiplier network

  std::function<void(const geom::Point&, ad::Jet*)> exact_u_jets;
  std::function<void(const geom::Point&, double*)> exact_lambda;
  std::function<void(const geom::Point&, double*)> obstacle;
  std::function<void(const geom::Point&, double*)> forcing;

  /// g = trace of the exact solution channels.
  void boundary_values(const geom::Point& p, double* out) const;
  /// u channel constrained by multiplier component k.
  int constrained_channel(int k) const { return kind == Kind::elasticity ? k : 0; }
  /// number of boundary channels carrying the H^{1/2} loss term
  int hhalf_channels() const { return kind == Kind::biharmonic_split ? 1 : field_dim; }
};

struct ProblemOptions {
  double E = 1.0;
  double nu = 0.3;
  double r = 0.7;
};

BenchmarkProblem make_problem(const std::string& id, const ProblemOptions& opts = {});
std::vector<std::string> problem_ids();

/// Evaluation view of a (u, lambda) pair: either a trained network pair or
/// the exact closed forms plugged in analytically.
struct PairEval {
  int field_dim = 1;
  int multiplier_dim = 1;
  std::function<void(const geom::Point&, ad::Jet*)> u_jets;
  std::function<void(const geom::Point&, double*)> lambda_values;
};

PairEval pair_from_networks(const net::NetworkPair& nets);
PairEval exact_pair(const BenchmarkProblem& problem);

/// Residual of the governing system at one interior point, assembled from
/// jets. For the scalar kind this is lap(v) + lambda + f; elasticity uses the
/// divergence of the stress tensor; the fourth-order split yields two
/// components (lap(w) - lambda - f, lap(v) - w).
template <class S, class JetT>
void residual_formula(Kind kind, double lame_lambda, double lame_mu, const JetT* u,
                      const S* lam, const double* f, S* out) {
  switch (kind) {
    case Kind::scalar_laplace:
      out[0] = u[0].hxx + u[0].hyy + lam[0] + f[0];
      break;
    case Kind::elasticity: {
      const double lm = lame_lambda + lame_mu;
      out[0] = lm * (u[0].hxx + u[1].hxy) + lame_mu * (u[0].hxx + u[0].hyy) + lam[0] + f[0];
      out[1] = lm * (u[0].hxy + u[1].hyy) + lame_mu * (u[1].hxx + u[1].hyy) + lam[1] + f[1];
      break;
    }
    case Kind::biharmonic_split:
      out[0] = u[1].hxx + u[1].hyy - lam[0] - f[0];
      out[1] = u[0].hxx + u[0].hyy - u[1].v;
      break;
  }
}

/// Residual evaluated with plain doubles (diagnostics and tests).
std::vector<double> pde_residual(const BenchmarkProblem& problem, const PairEval& pair,
                                 const geom::Point& x);
std::vector<double> pde_residual(const BenchmarkProblem& problem, const net::NetworkPair& nets,
                                 const geom::Point& x);

/// exact_lambda as a vector (diagnostics).
std::vector<double> exact_multiplier(const BenchmarkProblem& problem, const geom::Point& x);

}  // namespace cpinn::prob
