#include "cpinn/tape.hpp"

#include <stdexcept>

namespace cpinn::ad {

int ParamTape::add_network(const net::MlpNetwork* n) {
  nets_.push_back(n);
  net_versions_.push_back(n->version());
  net_offsets_.push_back(total_params_);
  total_params_ += n->parameter_count();
  return static_cast<int>(nets_.size()) - 1;
}

Var ParamTape::constant(double c) {
  nodes_.push_back({});
  return {this, static_cast<int>(nodes_.size()) - 1, c};
}

Var ParamTape::param_leaf(int net_id, int param_index) {
  nodes_.push_back({});
  const int node = static_cast<int>(nodes_.size()) - 1;
  leaves_.push_back({node, net_id, param_index, -1, 0, 0});
  const double v = nets_[net_id]->pack_params()[param_index];
  return {this, node, v};
}

void ParamTape::eval(int net_id, double x, double y, JetVars* out) {
  const net::MlpNetwork* n = nets_[net_id];
  const int c = n->output_dim();
  std::vector<Jet> jets(c);
  PointEval pe;
  pe.net_id = net_id;
  pe.first_leaf = static_cast<int>(leaves_.size());
  pe.channels = c;
  n->forward_jets(x, y, jets.data(), &pe.trace);
  const int eval_index = static_cast<int>(evals_.size());
  for (int ch = 0; ch < c; ++ch) {
    const double comp[6] = {jets[ch].v,   jets[ch].g[0], jets[ch].g[1],
                            jets[ch].hxx, jets[ch].hxy,  jets[ch].hyy};
    Var vars[6];
    for (int k = 0; k < 6; ++k) {
      nodes_.push_back({});
      const int node = static_cast<int>(nodes_.size()) - 1;
      leaves_.push_back({node, net_id, -1, eval_index, ch, k});
      vars[k] = {this, node, comp[k]};
    }
    out[ch] = {vars[0], vars[1], vars[2], vars[3], vars[4], vars[5]};
  }
  evals_.push_back(std::move(pe));
}

Var ParamTape::binary(Var a, Var b, double va, double da, double db) {
  if (a.tape != this || b.tape != this) throw std::logic_error("vars from different tapes");
  nodes_.push_back({a.idx, b.idx, da, db});
  return {this, static_cast<int>(nodes_.size()) - 1, va};
}

Var ParamTape::unary(Var a, double val, double da) {
  if (a.tape != this) throw std::logic_error("var from different tape");
  nodes_.push_back({a.idx, -1, da, 0.0});
  return {this, static_cast<int>(nodes_.size()) - 1, val};
}

void ParamTape::check_versions() const {
  for (std::size_t i = 0; i < nets_.size(); ++i)
    if (nets_[i]->version() != net_versions_[i])
      throw std::logic_error("tape replay on mismatched parameter snapshot");
}

void ParamTape::backward(std::span<const int> seed_nodes, std::span<const double> seed_vals,
                         Eigen::Ref<Eigen::VectorXd> grad) const {
  adj_.assign(nodes_.size(), 0.0);
  int top = -1;
  for (std::size_t i = 0; i < seed_nodes.size(); ++i) {
    adj_[seed_nodes[i]] += seed_vals[i];
    top = std::max(top, seed_nodes[i]);
  }
  for (int i = top; i >= 0; --i) {
    const double a = adj_[i];
    if (a == 0.0) continue;
    const Node& n = nodes_[i];
    if (n.a >= 0) adj_[n.a] += n.da * a;
    if (n.b >= 0) adj_[n.b] += n.db * a;
  }
  // Fold leaf adjoints back through the network evaluations.
  std::vector<Jet> out_adj;
  std::size_t li = 0;
  for (const PointEval& pe : evals_) {
    out_adj.assign(pe.channels, Jet{});
    bool touched = false;
    li = static_cast<std::size_t>(pe.first_leaf);
    for (int ch = 0; ch < pe.channels; ++ch) {
      for (int k = 0; k < 6; ++k, ++li) {
        const double a = adj_[leaves_[li].node];
        if (a == 0.0) continue;
        touched = true;
        Jet& j = out_adj[ch];
        switch (k) {
          case 0: j.v = a; break;
          case 1: j.g[0] = a; break;
          case 2: j.g[1] = a; break;
          case 3: j.hxx = a; break;
          case 4: j.hxy = a; break;
          case 5: j.hyy = a; break;
        }
      }
    }
    if (!touched) continue;
    const int off = net_offsets_[pe.net_id];
    const int np = nets_[pe.net_id]->parameter_count();
    nets_[pe.net_id]->backward_jets(pe.trace, out_adj.data(), grad.segment(off, np));
  }
  // Direct parameter leaves.
  for (const Leaf& lf : leaves_) {
    if (lf.param_index < 0) continue;
    const double a = adj_[lf.node];
    if (a != 0.0) grad[net_offsets_[lf.net_id] + lf.param_index] += a;
  }
}

Eigen::VectorXd ParamTape::gradient(Var loss) const {
  check_versions();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(total_params_);
  const int node = loss.idx;
  const double one = 1.0;
  backward(std::span<const int>(&node, 1), std::span<const double>(&one, 1), g);
  return g;
}

Eigen::MatrixXd ParamTape::jacobian(std::span<const Var> residuals) const {
  check_versions();
  Eigen::MatrixXd J(residuals.size(), total_params_);
  Eigen::VectorXd row(total_params_);
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    row.setZero();
    const int node = residuals[i].idx;
    const double one = 1.0;
    backward(std::span<const int>(&node, 1), std::span<const double>(&one, 1), row);
    J.row(i) = row;
  }
  return J;
}

Eigen::VectorXd ParamTape::weighted_gradient(std::span<const Var> residuals,
                                             std::span<const double> seeds) const {
  check_versions();
  if (residuals.size() != seeds.size()) throw std::invalid_argument("seed size mismatch");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(total_params_);
  std::vector<int> nodes(residuals.size());
  for (std::size_t i = 0; i < residuals.size(); ++i) nodes[i] = residuals[i].idx;
  backward(nodes, seeds, g);
  return g;
}

}  // namespace cpinn::ad
