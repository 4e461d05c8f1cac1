#include "cpinn/evaluation.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace cpinn::eval {

namespace {

using geom::Point;

/// channels entering the H1 error: all primal channels, except that the
/// fourth-order split is judged on the constrained field alone
int error_channels(const prob::BenchmarkProblem& pb) {
  return pb.kind == prob::Kind::biharmonic_split ? 1 : pb.field_dim;
}

}  // namespace

double relative_h1_error(const prob::BenchmarkProblem& pb, const prob::PairEval& approx,
                         int M, bool seminorm) {
  if (M < 16) throw std::invalid_argument("evaluation resolution must be >= 16");
  const int ch = error_channels(pb);
  std::vector<ad::Jet> je(pb.field_dim), ja(pb.field_dim);
  const double hx = pb.domain.width() / (M - 1);
  const double hy = pb.domain.height() / (M - 1);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < M; ++i) {
    const double wx = (i == 0 || i == M - 1) ? 0.5 : 1.0;
    for (int j = 0; j < M; ++j) {
      const double wy = (j == 0 || j == M - 1) ? 0.5 : 1.0;
      const double w = wx * wy * hx * hy;
      const Point p{pb.domain.lo[0] + i * hx, pb.domain.lo[1] + j * hy};
      pb.exact_u_jets(p, je.data());
      approx.u_jets(p, ja.data());
      for (int c = 0; c < ch; ++c) {
        const double dv = je[c].v - ja[c].v;
        const double dgx = je[c].g[0] - ja[c].g[0];
        const double dgy = je[c].g[1] - ja[c].g[1];
        num += w * ((seminorm ? 0.0 : dv * dv) + dgx * dgx + dgy * dgy);
        den += w * ((seminorm ? 0.0 : je[c].v * je[c].v) + je[c].g[0] * je[c].g[0] +
                    je[c].g[1] * je[c].g[1]);
      }
    }
  }
  return 100.0 * std::sqrt(num / den);
}

namespace {

/// discrete L2 + discrete L2 of central second difference quotients on the
/// N x N tensor grid (the B2 surrogate of one field group)
double grid_surrogate(const std::vector<double>& vals, int channels, int N, double h) {
  const int m = N * N;
  double l2 = 0.0;
  for (double v : vals) l2 += v * v;
  l2 = std::sqrt(l2 / m);
  double d2 = 0.0;
  int count = 0;
  for (int c = 0; c < channels; ++c) {
    const double* f = vals.data() + static_cast<std::size_t>(c) * m;
    for (int i = 1; i + 1 < N; ++i) {
      for (int j = 1; j + 1 < N; ++j) {
        const double fxx =
            (f[(i + 1) * N + j] - 2.0 * f[i * N + j] + f[(i - 1) * N + j]) / (h * h);
        const double fyy =
            (f[i * N + j + 1] - 2.0 * f[i * N + j] + f[i * N + j - 1]) / (h * h);
        d2 += fxx * fxx + fyy * fyy;
        ++count;
      }
    }
  }
  if (count > 0) d2 = std::sqrt(d2 / count);
  return l2 + d2;
}

/// ring variant: 1-D periodic second differences along the boundary trace
double ring_surrogate(const std::vector<double>& vals, int channels, int mb, double h) {
  double l2 = 0.0;
  for (double v : vals) l2 += v * v;
  l2 = std::sqrt(l2 / mb);
  double d2 = 0.0;
  for (int c = 0; c < channels; ++c) {
    const double* f = vals.data() + static_cast<std::size_t>(c) * mb;
    for (int j = 0; j < mb; ++j) {
      const double fm = f[(j + mb - 1) % mb], f0 = f[j], fp = f[(j + 1) % mb];
      const double s = (fp - 2.0 * f0 + fm) / (h * h);
      d2 += s * s;
    }
  }
  d2 = std::sqrt(d2 / (mb * channels));
  return l2 + d2;
}

}  // namespace

double u_norm_surrogate(const prob::BenchmarkProblem& pb, const prob::PairEval& pair,
                        const geom::CollocationSets& sets) {
  const int m = sets.m_interior();
  const int mb = sets.m_boundary();
  const int N = sets.N;
  const int eq = pb.equation_dim;
  const int fd = pb.field_dim;
  const int md = pb.multiplier_dim;
  std::vector<ad::Jet> u(fd);
  std::vector<double> lam(md);
  std::vector<double> op_field(static_cast<std::size_t>(eq) * m);
  std::vector<double> v_field(static_cast<std::size_t>(fd) * m);
  std::vector<double> mu_field(static_cast<std::size_t>(md) * m);
  std::vector<double> zero_f(std::max(pb.forcing_dim, 1), 0.0);
  std::vector<double> res(eq);
  for (int i = 0; i < m; ++i) {
    pair.u_jets(sets.interior[i], u.data());
    pair.lambda_values(sets.interior[i], lam.data());
    prob::residual_formula<double, ad::Jet>(pb.kind, pb.elasticity.lambda_lame(),
                                            pb.elasticity.mu_lame(), u.data(), lam.data(),
                                            zero_f.data(), res.data());
    for (int c = 0; c < eq; ++c) op_field[static_cast<std::size_t>(c) * m + i] = res[c];
    for (int c = 0; c < fd; ++c) v_field[static_cast<std::size_t>(c) * m + i] = u[c].v;
    for (int k = 0; k < md; ++k) mu_field[static_cast<std::size_t>(k) * m + i] = lam[k];
  }
  std::vector<double> trace_field(static_cast<std::size_t>(fd) * mb);
  for (int j = 0; j < mb; ++j) {
    pair.u_jets(sets.boundary[j], u.data());
    for (int c = 0; c < fd; ++c) trace_field[static_cast<std::size_t>(c) * mb + j] = u[c].v;
  }
  const double h = sets.spacing;
  const double ring_h = sets.domain.perimeter() / mb;
  const double s1 = grid_surrogate(op_field, eq, N, h);
  const double s2 = ring_surrogate(trace_field, fd, mb, ring_h);
  const double s3 = grid_surrogate(v_field, fd, N, h);
  const double s4 = grid_surrogate(mu_field, md, N, h);
  const double s = std::max({s1, s2, s3, s4});
  return s * s;
}

const char* kReportHeader =
    "problem,variant,N,seed,rel_h1_pct,final_loss,interior,boundary_l2,boundary_hhalf,duality,"
    "residual_RU,u_norm_sq,runtime_s";

std::string report_row(const ErrorReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%s,%s,%d,%llu,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g",
                r.problem.c_str(), r.variant.c_str(), r.N,
                static_cast<unsigned long long>(r.seed), r.rel_h1_pct, r.final_loss,
                r.breakdown.interior, r.breakdown.boundary_l2, r.breakdown.boundary_hhalf,
                r.breakdown.duality, r.residual_ru, r.u_norm_sq, r.runtime_s);
  return buf;
}

SingleRun run_single(const prob::BenchmarkProblem& pb, loss::Variant variant, int N,
                     std::uint64_t seed, const loss::LossConfig& loss_cfg,
                     const opt::EngdConfig& engd, int eval_res, bool timing) {
  const auto t0 = std::chrono::steady_clock::now();
  SingleRun out;
  geom::CollocationSets sets = geom::build_grids(pb.domain, N);
  loss::LossConfig cfg = loss_cfg;
  cfg.variant = variant;
  out.nets = train::make_networks(pb, cfg.constraint, seed);
  std::ostringstream history;
  opt::TrainResult tr = train::train_pair(out.nets, pb, sets, cfg, engd, &history);
  out.history_csv = history.str();
  const prob::PairEval pair = prob::pair_from_networks(out.nets);
  ErrorReport& r = out.report;
  r.problem = pb.id;
  r.variant = loss::variant_name(variant);
  r.N = N;
  r.seed = seed;
  r.rel_h1_pct = relative_h1_error(pb, pair, eval_res);
  r.final_loss = tr.history.back();
  r.breakdown = tr.final_breakdown;
  r.residual_ru = norms::recovery_residual(N, norms::RecoveryExponents{});
  r.u_norm_sq = u_norm_surrogate(pb, pair, sets);
  if (timing) {
    const auto t1 = std::chrono::steady_clock::now();
    r.runtime_s = std::chrono::duration<double>(t1 - t0).count();
  }
  return out;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CPINN_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<TableRow> run_table(const TableSpec& spec) {
  struct Cell {
    int N;
    loss::Variant variant;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (int N : spec.Ns)
    for (loss::Variant v : spec.variants)
      for (std::uint64_t s : spec.seeds) cells.push_back({N, v, s});
  std::vector<TableRow> rows(cells.size());
  if (cells.empty()) return rows;

  const prob::BenchmarkProblem pb = prob::make_problem(spec.problem_id, spec.options);
  const int threads = std::min<int>(resolve_threads(spec.threads), static_cast<int>(cells.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= cells.size()) return;
      const Cell& c = cells[k];
      try {
        loss::LossConfig cfg;
        cfg.constraint = spec.constraint;
        cfg.hinge_weight = spec.hinge_weight;
        SingleRun run = run_single(pb, c.variant, c.N, c.seed, cfg, spec.engd, spec.eval_res,
                                   spec.timing);
        rows[k].report = run.report;
      } catch (const std::exception& e) {
        rows[k].report.problem = pb.id;
        rows[k].report.variant = loss::variant_name(c.variant);
        rows[k].report.N = c.N;
        rows[k].report.seed = c.seed;
        rows[k].error = e.what();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace cpinn::eval
