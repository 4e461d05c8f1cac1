#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cpinn/geometry.hpp"
#include "cpinn/problems.hpp"
#include "cpinn/tape.hpp"

namespace cpinn::loss {

enum class Variant { pinn_mixed, cpinn_mixed };
enum class ConstraintMode { literal, hard_lambda, hinge_penalty };

const char* variant_name(Variant v);
const char* constraint_name(ConstraintMode m);

struct LossConfig {
  Variant variant = Variant::cpinn_mixed;
  ConstraintMode constraint = ConstraintMode::literal;
  double hinge_weight = 1.0;  // only active in hinge_penalty mode
  int d = 2;
  double gamma() const { return 2.0 * d / (d + 2.0); }
};

struct LossBreakdown {
  double interior = 0.0;
  double boundary_l2 = 0.0;
  double boundary_hhalf = 0.0;  // 0 for the plain mixed loss
  double duality = 0.0;
  double hinge = 0.0;  // 0 unless hinge_penalty mode
  double total = 0.0;
};

/// Problem data sampled once per (problem, sets): forcing and obstacle on
/// the interior grid, boundary data on the ring, and the PSD quadratic form
/// L with e^T L e = (1/m^2) sum_{i != l} |e_i - e_l|^2 / |x_i - x_l|^d.
struct SampledData {
  std::vector<double> f;    // forcing_dim blocks of m_tilde
  std::vector<double> psi;  // multiplier_dim blocks of m_tilde
  std::vector<double> g;    // field_dim blocks of m_bar
  Eigen::MatrixXd hhalf_form;
};

SampledData sample_data(const prob::BenchmarkProblem& problem, const geom::CollocationSets& sets);

/// Full evaluation (values only, no tape) of the configured variant.
LossBreakdown evaluate(const prob::BenchmarkProblem& problem, const prob::PairEval& pair,
                       const geom::CollocationSets& sets, const LossConfig& cfg,
                       const SampledData& data);
LossBreakdown evaluate(const prob::BenchmarkProblem& problem, const prob::PairEval& pair,
                       const geom::CollocationSets& sets, const LossConfig& cfg);

LossBreakdown loss_pinn_mixed(const prob::BenchmarkProblem& problem, const prob::PairEval& pair,
                              const geom::CollocationSets& sets,
                              ConstraintMode constraint = ConstraintMode::literal,
                              double hinge_weight = 1.0);
LossBreakdown loss_cpinn_mixed(const prob::BenchmarkProblem& problem, const prob::PairEval& pair,
                               const geom::CollocationSets& sets,
                               ConstraintMode constraint = ConstraintMode::literal,
                               double hinge_weight = 1.0);

/// Tape-recorded evaluation: the scalar expression plus the residual vars
/// the optimizer turns into Jacobian rows.
struct RecordedLoss {
  ad::Var total;
  LossBreakdown breakdown;
  std::vector<ad::Var> interior_residuals;  // equation-major blocks of m_tilde
  std::vector<double> interior_values;
  std::vector<ad::Var> interior_means;  // per equation component (cpinn only)
  std::vector<ad::Var> boundary_errors;  // channel-major blocks of m_bar
  std::vector<double> boundary_values;
  std::vector<ad::Var> hinge_residuals;  // constraint-major blocks (hinge mode)
  std::vector<double> hinge_values;
};

/// Records the loss of the network pair on the given tape. The networks must
/// already be registered on the tape as u_id / lam_id.
RecordedLoss record(const prob::BenchmarkProblem& problem, const geom::CollocationSets& sets,
                    const LossConfig& cfg, const SampledData& data, ad::ParamTape& tape, int u_id,
                    int lam_id);

}  // namespace cpinn::loss
