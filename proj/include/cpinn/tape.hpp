#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <vector>

#include "cpinn/network.hpp"

namespace cpinn::ad {

class ParamTape;

/// Handle to a recorded scalar. Carries the forward value so loss code can
/// be written generically over double / Var.
struct Var {
  ParamTape* tape = nullptr;
  int idx = -1;
  double v = 0.0;
};

/// Jet observables of one network output channel as tape leaves.
struct JetVars {
  Var v, gx, gy, hxx, hxy, hyy;
};

/// Records one loss evaluation: network point evaluations (with cached
/// forward traces) plus the scalar expression built on top of their jet
/// observables. Replaying the tape backward yields exact parameter
/// gradients, including through second spatial derivatives.
class ParamTape {
 public:
  /// Registers a network; its parameters occupy the next segment of the
  /// packed gradient vector. The current version is snapshotted.
  int add_network(const net::MlpNetwork* n);

  int total_params() const { return total_params_; }

  Var constant(double c);
  /// Leaf that depends directly on one parameter of a registered network.
  Var param_leaf(int net_id, int param_index);

  /// Evaluates network net_id at (x, y) and registers all jet observables
  /// of every output channel as leaves. out has output_dim() entries.
  void eval(int net_id, double x, double y, JetVars* out);

  double value(Var a) const { return a.v; }

  // recording primitives (two-parent nodes with frozen local partials)
  Var binary(Var a, Var b, double va, double da, double db);
  Var unary(Var a, double val, double da);

  /// Gradient of a recorded scalar with respect to every parameter of every
  /// registered network (packed in registration order).
  Eigen::VectorXd gradient(Var loss) const;

  /// Row i is the parameter gradient of residuals[i].
  Eigen::MatrixXd jacobian(std::span<const Var> residuals) const;

  /// Single reverse sweep seeded with sum_i seeds[i] * residuals[i];
  /// equivalent to jacobian(residuals)^T * seeds but cheaper.
  Eigen::VectorXd weighted_gradient(std::span<const Var> residuals,
                                    std::span<const double> seeds) const;

  std::size_t num_nodes() const { return nodes_.size(); }

 private:
  struct Node {
    int a = -1, b = -1;
    double da = 0.0, db = 0.0;
  };
  struct Leaf {
    int node;        // tape node index
    int net_id;      // -1 for pure constants (not stored as leaves)
    int param_index; // >= 0: direct parameter leaf; -1: jet observable
    int eval_index;  // point evaluation owning this leaf (-1 for params)
    int channel;     // output channel
    int component;   // 0..5: v, gx, gy, hxx, hxy, hyy
  };
  struct PointEval {
    int net_id;
    net::JetTrace trace;
    int first_leaf;  // index into leaves_
    int channels;
  };

  void backward(std::span<const int> seed_nodes, std::span<const double> seed_vals,
                Eigen::Ref<Eigen::VectorXd> grad) const;
  void check_versions() const;

  std::vector<Node> nodes_;
  std::vector<Leaf> leaves_;
  std::vector<PointEval> evals_;
  std::vector<const net::MlpNetwork*> nets_;
  std::vector<std::uint64_t> net_versions_;
  std::vector<int> net_offsets_;
  int total_params_ = 0;
  mutable std::vector<double> adj_;  // scratch adjoint buffer
};

// ---- arithmetic usable generically over double and Var ----

inline Var operator+(Var a, Var b) { return a.tape->binary(a, b, a.v + b.v, 1.0, 1.0); }
inline Var operator-(Var a, Var b) { return a.tape->binary(a, b, a.v - b.v, 1.0, -1.0); }
inline Var operator*(Var a, Var b) { return a.tape->binary(a, b, a.v * b.v, b.v, a.v); }
inline Var operator-(Var a) { return a.tape->unary(a, -a.v, -1.0); }
inline Var operator+(Var a, double c) { return a.tape->unary(a, a.v + c, 1.0); }
inline Var operator+(double c, Var a) { return a + c; }
inline Var operator-(Var a, double c) { return a.tape->unary(a, a.v - c, 1.0); }
inline Var operator-(double c, Var a) { return a.tape->unary(a, c - a.v, -1.0); }
inline Var operator*(Var a, double c) { return a.tape->unary(a, a.v * c, c); }
inline Var operator*(double c, Var a) { return a * c; }
inline Var operator/(Var a, double c) { return a * (1.0 / c); }
inline Var operator/(Var a, Var b) {
  return a.tape->binary(a, b, a.v / b.v, 1.0 / b.v, -a.v / (b.v * b.v));
}

/// |t| with subgradient 0 at t = 0.
inline Var absval(Var a) {
  const double s = a.v > 0.0 ? 1.0 : (a.v < 0.0 ? -1.0 : 0.0);
  return a.tape->unary(a, std::fabs(a.v), s);
}
inline double absval(double a) { return std::fabs(a); }

/// max(t, 0) with derivative 0 on t <= 0.
inline Var relu(Var a) {
  return a.tape->unary(a, a.v > 0.0 ? a.v : 0.0, a.v > 0.0 ? 1.0 : 0.0);
}
inline double relu(double a) { return a > 0.0 ? a : 0.0; }

inline Var sqr(Var a) { return a * a; }
inline double sqr(double a) { return a * a; }

/// |t|^p with the same subgradient-0-at-0 convention.
inline Var pow_abs(Var a, double p) {
  const double m = std::fabs(a.v);
  const double val = std::pow(m, p);
  const double d = m == 0.0 ? 0.0 : p * std::pow(m, p - 1.0) * (a.v > 0.0 ? 1.0 : -1.0);
  return a.tape->unary(a, val, d);
}
inline double pow_abs(double a, double p) { return std::pow(std::fabs(a), p); }

inline Var pow_pos(Var a, double p) {
  const double val = std::pow(a.v, p);
  return a.tape->unary(a, val, a.v > 0.0 ? p * val / a.v : 0.0);
}
inline double pow_pos(double a, double p) { return std::pow(a, p); }

inline double value_of(double a) { return a; }
inline double value_of(Var a) { return a.v; }

}  // namespace cpinn::ad
