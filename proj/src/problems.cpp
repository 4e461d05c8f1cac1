#include "cpinn/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cpinn::prob {

namespace {

constexpr double kPi = std::numbers::pi;

using ad::Jet;
using geom::Point;

Jet jx(const Point& p) { return Jet::variable(p[0], 0); }
Jet jy(const Point& p) { return Jet::variable(p[1], 1); }

// ---- experiment 1: sin(pi x) sin(pi y) on (0,1)^2, contact on x <= 1/2 ----

Jet u1(const Point& p) { return ad::sin(kPi * jx(p)) * ad::sin(kPi * jy(p)); }

double psi1(const Point& p) {
  const double x = p[0], y = p[1];
  if (x <= 0.5) return std::sin(kPi * x) * std::sin(kPi * y);
  if (x < 0.75) return (((128.0 * x - 240.0) * x + 144.0) * x - 27.0) * std::sin(kPi * y);
  return 0.0;
}

double f1(const Point& p) {
  if (p[0] < 0.5) return 0.0;
  return 2.0 * kPi * kPi * std::sin(kPi * p[0]) * std::sin(kPi * p[1]);
}

double lambda1(const Point& p) {
  if (p[0] < 0.5) return 2.0 * kPi * kPi * std::sin(kPi * p[0]) * std::sin(kPi * p[1]);
  return 0.0;
}

// ---- experiment 2: paraboloid plus oscillation, obstacle touches nowhere
// inside, so the reaction vanishes and f = -lap(u) throughout ----

Jet u2(const Point& p) {
  const Jet x = jx(p), y = jy(p);
  return 0.6 - ad::sqr(x - 0.5) - ad::sqr(y - 0.5) + 0.1 * ad::sin(kPi * x) * ad::sin(kPi * y);
}

double psi2(const Point& p) {
  const double x = p[0], y = p[1];
  return 0.6 - (x - 0.5) * (x - 0.5) - (y - 0.5) * (y - 0.5);
}

double f2(const Point& p) {
  return 4.0 + 0.2 * kPi * kPi * std::sin(kPi * p[0]) * std::sin(kPi * p[1]);
}

// ---- experiment 3 ----

Jet u3(const Point& p) {
  const Jet x = jx(p), y = jy(p);
  return x + y + x * y * (1.0 - x) * (1.0 - y);
}

double psi3(const Point& p) {
  const double s = p[0] + p[1];
  return 0.2 * s * s;
}

double f3(const Point& p) {
  const double x = p[0], y = p[1];
  return 2.0 * (x * (1.0 - x) + y * (1.0 - y));
}

// ---- experiment 4 ----

Jet u4(const Point& p) {
  const Jet x = jx(p), y = jy(p);
  return ad::sin(kPi * x) + ad::sin(kPi * y) + 0.1 * x * y * (1.0 - x) * (1.0 - y);
}

double psi4(const Point& p) {
  const double rho2 = (p[0] - 0.5) * (p[0] - 0.5) + (p[1] - 0.5) * (p[1] - 0.5);
  const double t = rho2 - 0.1;
  return 0.8 - 4.0 * t * t;
}

double f4(const Point& p) {
  const double x = p[0], y = p[1];
  return kPi * kPi * (std::sin(kPi * x) + std::sin(kPi * y)) + 0.2 * (x + y - x * x - y * y);
}

// ---- experiment 5: plane-strain elasticity with a manufactured smooth
// displacement; the obstacle stays strictly below, so F = -div T(u) ----

Jet u5_component(const Point& p) {
  const Jet x = jx(p), y = jy(p);
  return (1.0 + x * x) * (1.0 + y * y) * ad::exp(x + y);
}

double psi5(const Point& p) { return psi4(p); }

void div_stress_exact(const ElasticityParams& ep, const Point& p, double* out) {
  Jet u[2] = {u5_component(p), u5_component(p)};
  const double lam0[2] = {0.0, 0.0};
  const double f0[2] = {0.0, 0.0};
  residual_formula<double, Jet>(Kind::elasticity, ep.lambda_lame(), ep.mu_lame(), u, lam0, f0,
                                out);
}

// ---- experiment 6: fourth-order problem on (-1,1)^2 split into
// (u, w = lap u); the threshold region never meets the obstacle, so the
// multiplier vanishes and f = lap^2 u = 4 cos x cos y throughout ----

Jet u6(const Point& p) { return ad::cos(jx(p)) * ad::cos(jy(p)); }
Jet w6(const Point& p) { return -2.0 * ad::cos(jx(p)) * ad::cos(jy(p)); }

double psi6(const Point& p) { return 0.6 * std::cos(p[0]) * std::cos(p[1]); }
double f6(const Point& p) { return 4.0 * std::cos(p[0]) * std::cos(p[1]); }

// ---- experiment 7: constant obstacle 0 on (-1,1)^2, contact disk |x| <= r ----

Jet u7(const Point& p, double r) {
  const Jet x = jx(p), y = jy(p);
  return ad::sqr(ad::max0(x * x + y * y - r * r));
}

double f7(const Point& p, double r) {
  const double rho2 = p[0] * p[0] + p[1] * p[1];
  const double r2 = r * r;
  if (rho2 > r2) return -4.0 * (2.0 * rho2 + 2.0 * (rho2 - r2));
  return -8.0 * r2 * (1.0 - (rho2 - r2));
}

double lambda7(const Point& p, double r) {
  const double rho2 = p[0] * p[0] + p[1] * p[1];
  if (rho2 > r * r) return 0.0;
  return -f7(p, r);
}

void compute_output_scales(BenchmarkProblem& prob) {
  const int M = 101;
  const auto pts = geom::eval_grid(prob.domain, M);
  std::vector<Jet> jets(prob.field_dim);
  std::vector<double> lam(prob.multiplier_dim);
  double umax = 0.0, lmax = 0.0;
  for (const auto& p : pts) {
    prob.exact_u_jets(p, jets.data());
    for (const auto& j : jets) umax = std::max(umax, std::fabs(j.v));
    prob.exact_lambda(p, lam.data());
    for (double v : lam) lmax = std::max(lmax, std::fabs(v));
  }
  prob.u_scale = std::max(1.5 * umax, 1.0);
  prob.lambda_scale = std::max(1.5 * lmax, 1.0);
}

}  // namespace

void BenchmarkProblem::boundary_values(const geom::Point& p, double* out) const {
  std::vector<ad::Jet> jets(field_dim);
  exact_u_jets(p, jets.data());
  for (int c = 0; c < field_dim; ++c) out[c] = jets[c].v;
}

BenchmarkProblem make_problem(const std::string& id, const ProblemOptions& opts) {
  BenchmarkProblem prob;
  prob.id = id;
  if (id == "exp1") {
    prob.domain = geom::RectDomain({0.0, 0.0}, {1.0, 1.0});
    prob.exact_u_jets = [](const Point& p, Jet* out) { out[0] = u1(p); };
    prob.exact_lambda = [](const Point& p, double* out) { out[0] = lambda1(p); };
    prob.obstacle = [](const Point& p, double* out) { out[0] = psi1(p); };
    prob.forcing = [](const Point& p, double* out) { out[0] = f1(p); };
  } else if (id == "exp2") {
    prob.domain = geom::RectDomain({0.0, 0.0}, {1.0, 1.0});
    prob.exact_u_jets = [](const Point& p, Jet* out) { out[0] = u2(p); };
    prob.exact_lambda = [](const Point&, double* out) { out[0] = 0.0; };
    prob.obstacle = [](const Point& p, double* out) { out[0] = psi2(p); };
    prob.forcing = [](const Point& p, double* out) { out[0] = f2(p); };
  } else if (id == "exp3") {
    prob.domain = geom::RectDomain({0.0, 0.0}, {1.0, 1.0});
    prob.exact_u_jets = [](const Point& p, Jet* out) { out[0] = u3(p); };
    prob.exact_lambda = [](const Point&, double* out) { out[0] = 0.0; };
    prob.obstacle = [](const Point& p, double* out) { out[0] = psi3(p); };
    prob.forcing = [](const Point& p, double* out) { out[0] = f3(p); };
  } else if (id == "exp4") {
    prob.domain = geom::RectDomain({0.0, 0.0}, {1.0, 1.0});
    prob.exact_u_jets = [](const Point& p, Jet* out) { out[0] = u4(p); };
    prob.exact_lambda = [](const Point&, double* out) { out[0] = 0.0; };
    prob.obstacle = [](const Point& p, double* out) { out[0] = psi4(p); };
    prob.forcing = [](const Point& p, double* out) { out[0] = f4(p); };
  } else if (id == "exp5") {
    const double nu = opts.nu;
    const bool ok = std::fabs(nu - 0.3) < 1e-12 || std::fabs(nu - 0.4) < 1e-12 ||
                    std::fabs(nu - 0.49) < 1e-12;
    if (!ok) throw std::invalid_argument("exp5 supports nu in {0.3, 0.4, 0.49}");
    prob.kind = Kind::elasticity;
    prob.domain = geom::RectDomain({0.0, 0.0}, {1.0, 1.0});
    prob.field_dim = 2;
    prob.multiplier_dim = 2;
    prob.equation_dim = 2;
    prob.forcing_dim = 2;
    prob.elasticity = {opts.E, nu};
    const ElasticityParams ep = prob.elasticity;
    prob.exact_u_jets = [](const Point& p, Jet* out) {
      out[0] = u5_component(p);
      out[1] = u5_component(p);
    };
    prob.exact_lambda = [](const Point&, double* out) { out[0] = out[1] = 0.0; };
    prob.obstacle = [](const Point& p, double* out) { out[0] = out[1] = psi5(p); };
    prob.forcing = [ep](const Point& p, double* out) {
      div_stress_exact(ep, p, out);
      out[0] = -out[0];
      out[1] = -out[1];
    };
  } else if (id == "exp6") {
    prob.kind = Kind::biharmonic_split;
    prob.domain = geom::RectDomain({-1.0, -1.0}, {1.0, 1.0});
    prob.field_dim = 2;
    prob.multiplier_dim = 1;
    prob.equation_dim = 2;
    prob.forcing_dim = 1;
    prob.exact_u_jets = [](const Point& p, Jet* out) {
      out[0] = u6(p);
      out[1] = w6(p);
    };
    prob.exact_lambda = [](const Point&, double* out) { out[0] = 0.0; };
    prob.obstacle = [](const Point& p, double* out) { out[0] = psi6(p); };
    prob.forcing = [](const Point& p, double* out) { out[0] = f6(p); };
  } else if (id == "exp7") {
    const double r = opts.r;
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("exp7 requires 0 < r < 1");
    prob.domain = geom::RectDomain({-1.0, -1.0}, {1.0, 1.0});
    prob.contact_radius = r;
    prob.exact_u_jets = [r](const Point& p, Jet* out) { out[0] = u7(p, r); };
    prob.exact_lambda = [r](const Point& p, double* out) { out[0] = lambda7(p, r); };
    prob.obstacle = [](const Point&, double* out) { out[0] = 0.0; };
    prob.forcing = [r](const Point& p, double* out) { out[0] = f7(p, r); };
  } else {
    throw std::invalid_argument("unknown experiment id: " + id);
  }
  compute_output_scales(prob);
  return prob;
}

std::vector<std::string> problem_ids() {
  return {"exp1", "exp2", "exp3", "exp4", "exp5", "exp6", "exp7"};
}

PairEval pair_from_networks(const net::NetworkPair& nets) {
  PairEval pe;
  pe.field_dim = nets.u_net.output_dim();
  pe.multiplier_dim = nets.lambda_net.output_dim();
  const net::MlpNetwork* u = &nets.u_net;
  const net::MlpNetwork* l = &nets.lambda_net;
  pe.u_jets = [u](const geom::Point& p, ad::Jet* out) { u->forward_jets(p[0], p[1], out); };
  pe.lambda_values = [l](const geom::Point& p, double* out) {
    const Eigen::VectorXd v = l->forward(p[0], p[1]);
    for (int c = 0; c < v.size(); ++c) out[c] = v[c];
  };
  return pe;
}

PairEval exact_pair(const BenchmarkProblem& problem) {
  PairEval pe;
  pe.field_dim = problem.field_dim;
  pe.multiplier_dim = problem.multiplier_dim;
  pe.u_jets = problem.exact_u_jets;
  pe.lambda_values = problem.exact_lambda;
  return pe;
}

std::vector<double> pde_residual(const BenchmarkProblem& problem, const PairEval& pair,
                                 const geom::Point& x) {
  if (pair.field_dim != problem.field_dim || pair.multiplier_dim != problem.multiplier_dim)
    throw std::invalid_argument("pair shape does not match problem kind");
  std::vector<ad::Jet> u(problem.field_dim);
  pair.u_jets(x, u.data());
  std::vector<double> lam(problem.multiplier_dim);
  pair.lambda_values(x, lam.data());
  std::vector<double> f(problem.forcing_dim);
  problem.forcing(x, f.data());
  std::vector<double> out(problem.equation_dim);
  residual_formula<double, ad::Jet>(problem.kind, problem.elasticity.lambda_lame(),
                                    problem.elasticity.mu_lame(), u.data(), lam.data(), f.data(),
                                    out.data());
  return out;
}

std::vector<double> pde_residual(const BenchmarkProblem& problem, const net::NetworkPair& nets,
                                 const geom::Point& x) {
  return pde_residual(problem, pair_from_networks(nets), x);
}

std::vector<double> exact_multiplier(const BenchmarkProblem& problem, const geom::Point& x) {
  std::vector<double> lam(problem.multiplier_dim);
  problem.exact_lambda(x, lam.data());
  return lam;
}

}  // namespace cpinn::prob
