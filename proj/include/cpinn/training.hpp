#pragma once

#include <cstdint>
#include <ostream>

#include "cpinn/losses.hpp"
#include "cpinn/optimizer.hpp"

namespace cpinn::train {

/// Depth-3, 15-unit networks for a benchmark: ReLU^3 hidden layers, tanh
/// output scaled to the problem's field range; the multiplier net switches
/// to a softplus output in hard-lambda mode. The multiplier seed stream is
/// decorrelated from the primal one.
net::NetworkPair make_networks(const prob::BenchmarkProblem& problem,
                               loss::ConstraintMode constraint, std::uint64_t seed);

/// ENGD objective for a network pair on one benchmark. The Gauss-Newton
/// metric collects the quadratic residual groups (interior, boundary L2,
/// boundary difference quotient, hinge); the duality term enters the
/// gradient only.
class PairObjective : public opt::Objective {
 public:
  PairObjective(net::NetworkPair* nets, const prob::BenchmarkProblem* problem,
                const geom::CollocationSets* sets, const loss::LossConfig* cfg);

  int num_params() const override;
  Eigen::VectorXd get_params() const override;
  void set_params(const Eigen::VectorXd& p) override;
  opt::SystemEval eval_system() override;
  double eval_loss() override;

 private:
  net::NetworkPair* nets_;
  const prob::BenchmarkProblem* problem_;
  const geom::CollocationSets* sets_;
  const loss::LossConfig* cfg_;
  loss::SampledData data_;
};

/// Trains the pair in place; deterministic given the initial parameters.
opt::TrainResult train_pair(net::NetworkPair& nets, const prob::BenchmarkProblem& problem,
                            const geom::CollocationSets& sets, const loss::LossConfig& loss_cfg,
                            const opt::EngdConfig& engd_cfg,
                            std::ostream* history_csv = nullptr);

}  // namespace cpinn::train
