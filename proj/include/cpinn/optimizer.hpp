#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <ostream>
#include <vector>

#include "cpinn/losses.hpp"

namespace cpinn::opt {

struct EngdConfig {
  int epochs = 500;
  double step = 1.0;
  double damping = 1e-6;
  double backtrack_factor = 0.5;
  int max_backtracks = 20;
  std::uint64_t seed = 1;
};

/// One quadratic block of the objective, value r^T W r with W either
/// diagonal (wdiag) or a small dense PSD matrix (wmat). Contributes
/// 2 J^T W J to the Gauss-Newton metric.
struct QuadGroup {
  Eigen::MatrixXd jac;
  Eigen::VectorXd res;
  Eigen::VectorXd wdiag;  // used when nonzero size
  Eigen::MatrixXd wmat;   // used otherwise
};

struct SystemEval {
  double total = 0.0;
  loss::LossBreakdown breakdown;
  std::vector<QuadGroup> groups;
  Eigen::VectorXd grad;
};

/// Anything ENGD can run on: the training adapter for network pairs, or a
/// plain least-squares system in the tests.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual int num_params() const = 0;
  virtual Eigen::VectorXd get_params() const = 0;
  virtual void set_params(const Eigen::VectorXd& p) = 0;
  /// Loss, per-group residuals/Jacobians and full gradient at the current
  /// parameters.
  virtual SystemEval eval_system() = 0;
  /// Loss value only (cheap; used by the line search).
  virtual double eval_loss() = 0;
};

struct StepInfo {
  double loss_before = 0.0;
  double loss_after = 0.0;
  double step_used = 0.0;
  int backtracks = 0;
  bool gradient_fallback = false;
  bool accepted = false;
  double gram_diag_max = 0.0;
};

/// Builds the damped Gram matrix from sys, solves for the natural-gradient
/// direction and backtracks until the loss does not increase. Falls back to
/// the plain gradient direction if the Gram step fails; leaves the
/// parameters untouched if no decrease is found at all.
StepInfo engd_step(Objective& obj, const SystemEval& sys, const EngdConfig& cfg);

struct TrainResult {
  std::vector<double> history;  // history[0] = initial loss
  loss::LossBreakdown final_breakdown;
  std::vector<StepInfo> steps;
};

/// Runs cfg.epochs steps; history is non-increasing. Streams one CSV row
/// "epoch,total,interior,boundary_l2,boundary_hhalf,duality" per entry when
/// history_csv is given. Throws std::runtime_error on a non-finite loss.
TrainResult train(Objective& obj, const EngdConfig& cfg, std::ostream* history_csv = nullptr);

}  // namespace cpinn::opt
