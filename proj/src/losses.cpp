#include "cpinn/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace cpinn::loss {

const char* variant_name(Variant v) {
  return v == Variant::pinn_mixed ? "pinn" : "cpinn";
}

const char* constraint_name(ConstraintMode m) {
  switch (m) {
    case ConstraintMode::literal: return "literal";
    case ConstraintMode::hard_lambda: return "hard-lambda";
    case ConstraintMode::hinge_penalty: return "hinge";
  }
  return "?";
}

SampledData sample_data(const prob::BenchmarkProblem& pb, const geom::CollocationSets& sets) {
  if (sets.m_interior() == 0 || sets.m_boundary() == 0)
    throw std::invalid_argument("empty collocation sets");
  SampledData d;
  const int m = sets.m_interior();
  const int mb = sets.m_boundary();
  d.f.resize(static_cast<std::size_t>(pb.forcing_dim) * m);
  d.psi.resize(static_cast<std::size_t>(pb.multiplier_dim) * m);
  std::vector<double> buf(std::max(pb.forcing_dim, std::max(pb.multiplier_dim, pb.field_dim)));
  for (int i = 0; i < m; ++i) {
    pb.forcing(sets.interior[i], buf.data());
    for (int c = 0; c < pb.forcing_dim; ++c) d.f[static_cast<std::size_t>(c) * m + i] = buf[c];
    pb.obstacle(sets.interior[i], buf.data());
    for (int c = 0; c < pb.multiplier_dim; ++c)
      d.psi[static_cast<std::size_t>(c) * m + i] = buf[c];
  }
  d.g.resize(static_cast<std::size_t>(pb.field_dim) * mb);
  for (int j = 0; j < mb; ++j) {
    pb.boundary_values(sets.boundary[j], buf.data());
    for (int c = 0; c < pb.field_dim; ++c) d.g[static_cast<std::size_t>(c) * mb + j] = buf[c];
  }
  // graph-Laplacian form of the pairwise difference quotient
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(mb, mb);
  for (int i = 0; i < mb; ++i) {
    for (int j = i + 1; j < mb; ++j) {
      const double dx = sets.boundary[i][0] - sets.boundary[j][0];
      const double dy = sets.boundary[i][1] - sets.boundary[j][1];
      const double dist2 = dx * dx + dy * dy;
      if (dist2 == 0.0) throw std::invalid_argument("duplicate boundary points");
      const double w = 1.0 / dist2;  // |x|^d with d = 2
      W(i, j) = w;
      W(j, i) = w;
    }
  }
  Eigen::MatrixXd L = -W;
  L.diagonal() = W.rowwise().sum();
  d.hhalf_form = (2.0 / (static_cast<double>(mb) * mb)) * L;
  return d;
}

namespace {

using geom::Point;

template <class S>
struct JetOf {
  S v, gx, gy, hxx, hxy, hyy;
};

struct DoubleCtx {
  using S = double;
  using JetT = ad::Jet;
  const prob::PairEval* pair;
  std::vector<ad::Jet> jbuf;
  void u_eval(const Point& p, JetT* out) { pair->u_jets(p, out); }
  void lambda_vals(const Point& p, S* out) { pair->lambda_values(p, out); }
  S constant(double c) const { return c; }
};

struct TapeCtx {
  using S = ad::Var;
  using JetT = ad::JetVars;
  ad::ParamTape* tape;
  int u_id, lam_id, mult_dim;
  std::vector<ad::JetVars> lbuf;
  void u_eval(const Point& p, JetT* out) { tape->eval(u_id, p[0], p[1], out); }
  void lambda_vals(const Point& p, S* out) {
    lbuf.resize(mult_dim);
    tape->eval(lam_id, p[0], p[1], lbuf.data());
    for (int k = 0; k < mult_dim; ++k) out[k] = lbuf[k].v;
  }
  S constant(double c) const { return tape->constant(c); }
};

template <class S>
struct Assembled {
  S interior, boundary_l2, boundary_hhalf, duality, hinge, total;
  std::vector<S> interior_residuals;
  std::vector<S> interior_means;
  std::vector<S> boundary_errors;
  std::vector<S> hinge_residuals;
};

template <class Ctx>
Assembled<typename Ctx::S> assemble(const prob::BenchmarkProblem& pb,
                                    const geom::CollocationSets& sets, const LossConfig& cfg,
                                    const SampledData& data, Ctx& ctx) {
  using S = typename Ctx::S;
  using JetT = typename Ctx::JetT;
  const int m = sets.m_interior();
  const int mb = sets.m_boundary();
  if (m == 0 || mb < 2) throw std::invalid_argument("collocation sets too small");
  const int eq = pb.equation_dim;
  const int fd = pb.field_dim;
  const int md = pb.multiplier_dim;
  const bool consistent = cfg.variant == Variant::cpinn_mixed;
  const bool hinge_on = cfg.constraint == ConstraintMode::hinge_penalty;
  const double gamma = cfg.gamma();

  Assembled<S> R;
  R.interior_residuals.reserve(static_cast<std::size_t>(eq) * m);
  R.boundary_errors.reserve(static_cast<std::size_t>(fd) * mb);

  std::vector<JetT> u(fd);
  std::vector<S> lam(md);
  std::vector<S> res(eq, ctx.constant(0.0));
  std::vector<double> fval(pb.forcing_dim);

  // interior sweep: residuals, duality, hinge
  S duality = ctx.constant(0.0);
  S hinge = ctx.constant(0.0);
  std::vector<std::vector<S>> res_by_eq(eq);
  for (auto& v : res_by_eq) v.reserve(m);
  std::vector<std::vector<S>> hinge_by_con;
  if (hinge_on) hinge_by_con.resize(md);
  for (int i = 0; i < m; ++i) {
    const Point& p = sets.interior[i];
    ctx.u_eval(p, u.data());
    ctx.lambda_vals(p, lam.data());
    for (int c = 0; c < pb.forcing_dim; ++c) fval[c] = data.f[static_cast<std::size_t>(c) * m + i];
    prob::residual_formula<S, JetT>(pb.kind, pb.elasticity.lambda_lame(),
                                    pb.elasticity.mu_lame(), u.data(), lam.data(), fval.data(),
                                    res.data());
    for (int c = 0; c < eq; ++c) res_by_eq[c].push_back(res[c]);
    for (int k = 0; k < md; ++k) {
      const double psi = data.psi[static_cast<std::size_t>(k) * m + i];
      const S gap = u[pb.constrained_channel(k)].v - psi;
      duality = duality + ad::absval(lam[k] * gap);
      if (hinge_on) hinge_by_con[k].push_back(ad::relu(psi - u[pb.constrained_channel(k)].v));
    }
  }
  duality = duality / static_cast<double>(m);

  S interior = ctx.constant(0.0);
  for (int c = 0; c < eq; ++c) {
    if (consistent) {
      S acc = ctx.constant(0.0);
      for (int i = 0; i < m; ++i) acc = acc + ad::pow_abs(res_by_eq[c][i], gamma);
      S mean = acc / static_cast<double>(m);
      R.interior_means.push_back(mean);
      interior = interior + ad::pow_pos(mean, 2.0 / gamma);
    } else {
      S acc = ctx.constant(0.0);
      for (int i = 0; i < m; ++i) acc = acc + ad::sqr(res_by_eq[c][i]);
      interior = interior + acc / static_cast<double>(m);
    }
    for (int i = 0; i < m; ++i) R.interior_residuals.push_back(res_by_eq[c][i]);
  }

  if (hinge_on) {
    for (int k = 0; k < md; ++k) {
      S acc = ctx.constant(0.0);
      for (int i = 0; i < m; ++i) acc = acc + ad::sqr(hinge_by_con[k][i]);
      hinge = hinge + (cfg.hinge_weight / static_cast<double>(m)) * acc;
      for (int i = 0; i < m; ++i) R.hinge_residuals.push_back(hinge_by_con[k][i]);
    }
  }

  // boundary sweep
  std::vector<std::vector<S>> err_by_ch(fd);
  for (auto& v : err_by_ch) v.reserve(mb);
  for (int j = 0; j < mb; ++j) {
    ctx.u_eval(sets.boundary[j], u.data());
    for (int c = 0; c < fd; ++c)
      err_by_ch[c].push_back(u[c].v - data.g[static_cast<std::size_t>(c) * mb + j]);
  }
  S boundary_l2 = ctx.constant(0.0);
  for (int c = 0; c < fd; ++c) {
    S acc = ctx.constant(0.0);
    for (int j = 0; j < mb; ++j) acc = acc + ad::sqr(err_by_ch[c][j]);
    boundary_l2 = boundary_l2 + acc / static_cast<double>(mb);
    for (int j = 0; j < mb; ++j) R.boundary_errors.push_back(err_by_ch[c][j]);
  }

  S boundary_hhalf = ctx.constant(0.0);
  if (consistent) {
    const double inv_m2 = 1.0 / (static_cast<double>(mb) * mb);
    for (int c = 0; c < pb.hhalf_channels(); ++c) {
      S acc = ctx.constant(0.0);
      for (int i = 0; i < mb; ++i) {
        for (int j = i + 1; j < mb; ++j) {
          const double dx = sets.boundary[i][0] - sets.boundary[j][0];
          const double dy = sets.boundary[i][1] - sets.boundary[j][1];
          const double w = 2.0 * inv_m2 / (dx * dx + dy * dy);  // ordered pairs, d = 2
          acc = acc + w * ad::sqr(err_by_ch[c][i] - err_by_ch[c][j]);
        }
      }
      boundary_hhalf = boundary_hhalf + acc;
    }
  }

  R.interior = interior;
  R.boundary_l2 = boundary_l2;
  R.boundary_hhalf = boundary_hhalf;
  R.duality = duality;
  R.hinge = hinge;
  R.total = interior + boundary_l2 + boundary_hhalf + duality + hinge;
  return R;
}

template <class S>
LossBreakdown to_breakdown(const Assembled<S>& a) {
  LossBreakdown b;
  b.interior = ad::value_of(a.interior);
  b.boundary_l2 = ad::value_of(a.boundary_l2);
  b.boundary_hhalf = ad::value_of(a.boundary_hhalf);
  b.duality = ad::value_of(a.duality);
  b.hinge = ad::value_of(a.hinge);
  b.total = ad::value_of(a.total);
  return b;
}

}  // namespace

LossBreakdown evaluate(const prob::BenchmarkProblem& pb, const prob::PairEval& pair,
                       const geom::CollocationSets& sets, const LossConfig& cfg,
                       const SampledData& data) {
  DoubleCtx ctx{&pair, {}};
  return to_breakdown(assemble(pb, sets, cfg, data, ctx));
}

LossBreakdown evaluate(const prob::BenchmarkProblem& pb, const prob::PairEval& pair,
                       const geom::CollocationSets& sets, const LossConfig& cfg) {
  return evaluate(pb, pair, sets, cfg, sample_data(pb, sets));
}

LossBreakdown loss_pinn_mixed(const prob::BenchmarkProblem& pb, const prob::PairEval& pair,
                              const geom::CollocationSets& sets, ConstraintMode constraint,
                              double hinge_weight) {
  LossConfig cfg;
  cfg.variant = Variant::pinn_mixed;
  cfg.constraint = constraint;
  cfg.hinge_weight = hinge_weight;
  return evaluate(pb, pair, sets, cfg);
}

LossBreakdown loss_cpinn_mixed(const prob::BenchmarkProblem& pb, const prob::PairEval& pair,
                               const geom::CollocationSets& sets, ConstraintMode constraint,
                               double hinge_weight) {
  LossConfig cfg;
  cfg.variant = Variant::cpinn_mixed;
  cfg.constraint = constraint;
  cfg.hinge_weight = hinge_weight;
  return evaluate(pb, pair, sets, cfg);
}

RecordedLoss record(const prob::BenchmarkProblem& pb, const geom::CollocationSets& sets,
                    const LossConfig& cfg, const SampledData& data, ad::ParamTape& tape, int u_id,
                    int lam_id) {
  TapeCtx ctx{&tape, u_id, lam_id, pb.multiplier_dim, {}};
  Assembled<ad::Var> a = assemble(pb, sets, cfg, data, ctx);
  RecordedLoss rl;
  rl.total = a.total;
  rl.breakdown = to_breakdown(a);
  rl.interior_residuals = std::move(a.interior_residuals);
  rl.interior_means = std::move(a.interior_means);
  rl.boundary_errors = std::move(a.boundary_errors);
  rl.hinge_residuals = std::move(a.hinge_residuals);
  rl.interior_values.reserve(rl.interior_residuals.size());
  for (const auto& v : rl.interior_residuals) rl.interior_values.push_back(v.v);
  rl.boundary_values.reserve(rl.boundary_errors.size());
  for (const auto& v : rl.boundary_errors) rl.boundary_values.push_back(v.v);
  rl.hinge_values.reserve(rl.hinge_residuals.size());
  for (const auto& v : rl.hinge_residuals) rl.hinge_values.push_back(v.v);
  return rl;
}

}  // namespace cpinn::loss
