#include "cpinn/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace cpinn::opt {

namespace {

Eigen::MatrixXd build_gram(const SystemEval& sys, int n, double damping) {
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  for (const QuadGroup& g : sys.groups) {
    if (g.jac.size() == 0) continue;
    if (g.wdiag.size() > 0) {
      const Eigen::MatrixXd Jw = g.wdiag.cwiseSqrt().asDiagonal() * g.jac;
      G.selfadjointView<Eigen::Lower>().rankUpdate(Jw.transpose(), 2.0);
    } else {
      const Eigen::MatrixXd WJ = g.wmat * g.jac;
      G.noalias() += 2.0 * g.jac.transpose() * WJ;
    }
  }
  G = G.selfadjointView<Eigen::Lower>();
  G.diagonal().array() += damping;
  return G;
}

}  // namespace

StepInfo engd_step(Objective& obj, const SystemEval& sys, const EngdConfig& cfg) {
  StepInfo info;
  info.loss_before = sys.total;
  info.loss_after = sys.total;
  if (!std::isfinite(sys.total)) throw std::runtime_error("non-finite loss in engd_step");
  const int n = obj.num_params();
  const Eigen::VectorXd p0 = obj.get_params();

  if (sys.grad.lpNorm<Eigen::Infinity>() == 0.0) {
    info.accepted = true;  // stationary; nothing to do
    info.step_used = 0.0;
    return info;
  }

  Eigen::MatrixXd G = build_gram(sys, n, cfg.damping);
  info.gram_diag_max = G.diagonal().maxCoeff();
  Eigen::VectorXd direction;
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() == Eigen::Success) {
    direction = llt.solve(sys.grad);
  } else {
    direction = sys.grad;
    info.gradient_fallback = true;
  }

  auto try_direction = [&](const Eigen::VectorXd& dir) -> bool {
    double eta = cfg.step;
    for (int k = 0; k <= cfg.max_backtracks; ++k) {
      obj.set_params(p0 - eta * dir);
      const double trial = obj.eval_loss();
      if (std::isfinite(trial) && trial <= info.loss_before) {
        info.loss_after = trial;
        info.step_used = eta;
        info.backtracks = k;
        info.accepted = true;
        return true;
      }
      eta *= cfg.backtrack_factor;
    }
    return false;
  };

  if (try_direction(direction)) return info;
  if (!info.gradient_fallback) {
    info.gradient_fallback = true;
    if (try_direction(sys.grad)) return info;
  }
  // no acceptable step; keep the current parameters
  obj.set_params(p0);
  info.step_used = 0.0;
  info.accepted = false;
  return info;
}

TrainResult train(Objective& obj, const EngdConfig& cfg, std::ostream* history_csv) {
  TrainResult result;
  auto stream_row = [&](int epoch, const loss::LossBreakdown& b) {
    if (!history_csv) return;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%d,%.10g,%.10g,%.10g,%.10g,%.10g\n", epoch, b.total,
                  b.interior, b.boundary_l2, b.boundary_hhalf, b.duality);
    (*history_csv) << buf;
  };
  if (history_csv) (*history_csv) << "epoch,total,interior,boundary_l2,boundary_hhalf,duality\n";

  SystemEval sys = obj.eval_system();
  if (!std::isfinite(sys.total)) throw std::runtime_error("non-finite initial loss");
  result.history.push_back(sys.total);
  result.final_breakdown = sys.breakdown;
  stream_row(0, sys.breakdown);
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    StepInfo info = engd_step(obj, sys, cfg);
    result.steps.push_back(info);
    sys = obj.eval_system();
    if (!std::isfinite(sys.total)) throw std::runtime_error("non-finite loss during training");
    result.history.push_back(sys.total);
    result.final_breakdown = sys.breakdown;
    stream_row(epoch, sys.breakdown);
  }
  return result;
}

}  // namespace cpinn::opt
