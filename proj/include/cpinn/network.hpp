#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "cpinn/jet.hpp"

namespace cpinn::net {

enum class Activation { relu3, tanh_out, softplus, identity };

const char* activation_name(Activation a);

/// f, f', f'', f''' of an activation at t.
struct ActDerivs {
  double f, fp, fpp, fppp;
};
ActDerivs activation_derivs(Activation a, double t);

enum class InitScheme { xavier, he, mixed };

/// Jet matrices are 6 x n: rows are (value, gx, gy, hxx, hxy, hyy), one
/// column per unit.
using JetMat = Eigen::Matrix<double, 6, Eigen::Dynamic>;

/// Cached forward pass of one point, enough to run the reverse sweep.
struct JetTrace {
  std::vector<JetMat> post;  // a_0 (input jets), a_1, ..., a_{L-1}
  std::vector<JetMat> pre;   // z_1, ..., z_L (pre-activation)
};

/// Fully connected network. Immutable during evaluation; set_params bumps a
/// version counter so recorded tapes can detect stale snapshots.
class MlpNetwork {
 public:
  MlpNetwork() = default;
  MlpNetwork(std::vector<int> widths, Activation hidden, Activation output,
             double output_scale = 1.0);

  static MlpNetwork init(const std::vector<int>& widths, InitScheme scheme,
                         std::uint64_t seed, Activation hidden = Activation::relu3,
                         Activation output = Activation::tanh_out,
                         double output_scale = 1.0);

  int input_dim() const { return widths_.front(); }
  int output_dim() const { return widths_.back(); }
  int num_layers() const { return static_cast<int>(weights_.size()); }
  const std::vector<int>& widths() const { return widths_; }
  Activation hidden_activation() const { return hidden_act_; }
  Activation output_activation() const { return output_act_; }
  double output_scale() const { return output_scale_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t version() const { return version_; }

  Eigen::MatrixXd& weight(int l) { return weights_[l]; }
  const Eigen::MatrixXd& weight(int l) const { return weights_[l]; }
  Eigen::VectorXd& bias(int l) { return biases_[l]; }
  const Eigen::VectorXd& bias(int l) const { return biases_[l]; }

  int parameter_count() const;
  Eigen::VectorXd pack_params() const;
  void set_params(const Eigen::VectorXd& flat);

  /// Plain forward evaluation (values only).
  Eigen::VectorXd forward(double x, double y) const;

  /// Forward with full jets; out must have output_dim() entries. If trace is
  /// non-null the layer activations are cached for a later reverse sweep.
  void forward_jets(double x, double y, ad::Jet* out, JetTrace* trace = nullptr) const;

  /// Reverse sweep: given adjoints of the output jets, accumulate the
  /// gradient with respect to all parameters (packed layout) into grad.
  void backward_jets(const JetTrace& trace, const ad::Jet* out_adjoint,
                     Eigen::Ref<Eigen::VectorXd> grad) const;

  void save_snapshot(const std::string& path) const;
  static MlpNetwork load_snapshot(const std::string& path);

 private:
  std::vector<int> widths_;
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
  Activation hidden_act_ = Activation::relu3;
  Activation output_act_ = Activation::tanh_out;
  double output_scale_ = 1.0;
  std::uint64_t seed_ = 0;
  std::uint64_t version_ = 0;
};

/// Primal / multiplier approximator pair sharing the input dimension.
struct NetworkPair {
  MlpNetwork u_net;
  MlpNetwork lambda_net;

  int total_parameter_count() const {
    return u_net.parameter_count() + lambda_net.parameter_count();
  }
  Eigen::VectorXd pack_params() const;
  void set_params(const Eigen::VectorXd& flat);
};

}  // namespace cpinn::net
