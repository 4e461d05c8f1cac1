#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpinn/norms.hpp"
#include "cpinn/optimizer.hpp"
#include "cpinn/training.hpp"

namespace cpinn::eval {

/// Relative H1 error of the primal approximation against the exact solution,
/// in percent, by tensor-grid trapezoidal quadrature at resolution M.
/// Vector kinds sum squares over channels; the fourth-order split reports
/// the constrained channel only. seminorm = true drops the L2 part.
double relative_h1_error(const prob::BenchmarkProblem& problem, const prob::PairEval& approx,
                         int M = 201, bool seminorm = false);

/// Smoothness surrogate for the recovery-stability diagnostic: max over the
/// field groups {op(v) + mu, trace v, v, mu} of (discrete L2 + discrete L2 of
/// second difference quotients), squared.
double u_norm_surrogate(const prob::BenchmarkProblem& problem, const prob::PairEval& pair,
                        const geom::CollocationSets& sets);

struct ErrorReport {
  std::string problem;
  std::string variant;
  int N = 0;
  std::uint64_t seed = 0;
  double rel_h1_pct = 0.0;
  double final_loss = 0.0;
  loss::LossBreakdown breakdown;
  double residual_ru = 0.0;
  double u_norm_sq = 0.0;
  double runtime_s = 0.0;
};

extern const char* kReportHeader;
std::string report_row(const ErrorReport& r);

struct TableSpec {
  std::string problem_id;
  prob::ProblemOptions options;
  std::vector<loss::Variant> variants = {loss::Variant::pinn_mixed, loss::Variant::cpinn_mixed};
  std::vector<int> Ns = {5, 10, 15, 20, 25, 30};
  std::vector<std::uint64_t> seeds = {1};
  loss::ConstraintMode constraint = loss::ConstraintMode::literal;
  double hinge_weight = 1.0;
  opt::EngdConfig engd;
  int eval_res = 201;
  int threads = 0;   // 0: decide from CPINN_THREADS / hardware
  bool timing = false;
};

struct TableRow {
  ErrorReport report;
  std::string error;  // empty on success
};

/// Trains every (N, variant, seed) combination and reports one row each,
/// in deterministic order. Per-row failures are recorded without aborting
/// the remaining rows. Rows may train concurrently.
std::vector<TableRow> run_table(const TableSpec& spec);

/// Trains one combination and fills a report (single-run path of the CLI).
struct SingleRun {
  ErrorReport report;
  net::NetworkPair nets;
  std::string history_csv;
};
SingleRun run_single(const prob::BenchmarkProblem& problem, loss::Variant variant, int N,
                     std::uint64_t seed, const loss::LossConfig& loss_cfg,
                     const opt::EngdConfig& engd, int eval_res, bool timing);

int resolve_threads(int requested);

}  // namespace cpinn::eval
