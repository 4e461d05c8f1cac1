#include "cpinn/training.hpp"

#include <cmath>

namespace cpinn::train {

namespace {
constexpr std::uint64_t kLambdaSeedOffset = 0x9E3779B97F4A7C15ULL;
}

net::NetworkPair make_networks(const prob::BenchmarkProblem& pb, loss::ConstraintMode constraint,
                               std::uint64_t seed) {
  net::NetworkPair pair;
  const std::vector<int> u_widths = {2, 15, 15, 15, pb.field_dim};
  const std::vector<int> l_widths = {2, 15, 15, 15, pb.multiplier_dim};
  pair.u_net = net::MlpNetwork::init(u_widths, net::InitScheme::mixed, seed,
                                     net::Activation::relu3, net::Activation::tanh_out,
                                     pb.u_scale);
  const net::Activation lam_out = constraint == loss::ConstraintMode::hard_lambda
                                      ? net::Activation::softplus
                                      : net::Activation::tanh_out;
  pair.lambda_net = net::MlpNetwork::init(l_widths, net::InitScheme::mixed,
                                          seed + kLambdaSeedOffset, net::Activation::relu3,
                                          lam_out, pb.lambda_scale);
  return pair;
}

PairObjective::PairObjective(net::NetworkPair* nets, const prob::BenchmarkProblem* problem,
                             const geom::CollocationSets* sets, const loss::LossConfig* cfg)
    : nets_(nets), problem_(problem), sets_(sets), cfg_(cfg),
      data_(loss::sample_data(*problem, *sets)) {}

int PairObjective::num_params() const { return nets_->total_parameter_count(); }

Eigen::VectorXd PairObjective::get_params() const { return nets_->pack_params(); }

void PairObjective::set_params(const Eigen::VectorXd& p) { nets_->set_params(p); }

double PairObjective::eval_loss() {
  return loss::evaluate(*problem_, prob::pair_from_networks(*nets_), *sets_, *cfg_, data_).total;
}

opt::SystemEval PairObjective::eval_system() {
  ad::ParamTape tape;
  const int u_id = tape.add_network(&nets_->u_net);
  const int lam_id = tape.add_network(&nets_->lambda_net);
  loss::RecordedLoss rl = loss::record(*problem_, *sets_, *cfg_, data_, tape, u_id, lam_id);

  opt::SystemEval sys;
  sys.total = rl.total.v;
  sys.breakdown = rl.breakdown;
  sys.grad = tape.gradient(rl.total);

  const int m = sets_->m_interior();
  const int mb = sets_->m_boundary();
  const int eq = problem_->equation_dim;
  const int fd = problem_->field_dim;

  if (cfg_->variant == loss::Variant::pinn_mixed) {
    opt::QuadGroup g;
    g.jac = tape.jacobian(rl.interior_residuals);
    g.res = Eigen::Map<const Eigen::VectorXd>(rl.interior_values.data(),
                                              rl.interior_values.size());
    g.wdiag = Eigen::VectorXd::Constant(g.res.size(), 1.0 / m);
    sys.groups.push_back(std::move(g));
  } else {
    // the consistent interior term is the square of an L1 mean: one
    // Gauss-Newton row per equation component
    std::vector<double> seeds(m);
    for (int c = 0; c < eq; ++c) {
      for (int i = 0; i < m; ++i) {
        const double r = rl.interior_values[static_cast<std::size_t>(c) * m + i];
        seeds[i] = (r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0)) / m;
      }
      const std::span<const ad::Var> block(rl.interior_residuals.data() +
                                               static_cast<std::size_t>(c) * m,
                                           static_cast<std::size_t>(m));
      opt::QuadGroup g;
      g.jac = tape.weighted_gradient(block, seeds).transpose();
      g.res = Eigen::VectorXd::Constant(1, rl.interior_means[c].v);
      g.wdiag = Eigen::VectorXd::Ones(1);
      sys.groups.push_back(std::move(g));
    }
  }

  Eigen::MatrixXd Jb = tape.jacobian(rl.boundary_errors);
  if (cfg_->variant == loss::Variant::cpinn_mixed) {
    for (int c = 0; c < problem_->hhalf_channels(); ++c) {
      opt::QuadGroup g;
      g.jac = Jb.middleRows(static_cast<Eigen::Index>(c) * mb, mb);
      g.res = Eigen::Map<const Eigen::VectorXd>(rl.boundary_values.data(), mb * fd)
                  .segment(static_cast<Eigen::Index>(c) * mb, mb);
      g.wmat = data_.hhalf_form;
      sys.groups.push_back(std::move(g));
    }
  }
  {
    opt::QuadGroup g;
    g.res = Eigen::Map<const Eigen::VectorXd>(rl.boundary_values.data(),
                                              rl.boundary_values.size());
    g.wdiag = Eigen::VectorXd::Constant(g.res.size(), 1.0 / mb);
    g.jac = std::move(Jb);
    sys.groups.push_back(std::move(g));
  }

  if (!rl.hinge_residuals.empty()) {
    opt::QuadGroup g;
    g.jac = tape.jacobian(rl.hinge_residuals);
    g.res = Eigen::Map<const Eigen::VectorXd>(rl.hinge_values.data(), rl.hinge_values.size());
    g.wdiag = Eigen::VectorXd::Constant(g.res.size(), cfg_->hinge_weight / m);
    sys.groups.push_back(std::move(g));
  }
  return sys;
}

opt::TrainResult train_pair(net::NetworkPair& nets, const prob::BenchmarkProblem& problem,
                            const geom::CollocationSets& sets, const loss::LossConfig& loss_cfg,
                            const opt::EngdConfig& engd_cfg, std::ostream* history_csv) {
  PairObjective objective(&nets, &problem, &sets, &loss_cfg);
  return opt::train(objective, engd_cfg, history_csv);
}

}  // namespace cpinn::train
