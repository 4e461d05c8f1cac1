#include "cpinn/network.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <stdexcept>

namespace cpinn::net {

const char* activation_name(Activation a) {
  switch (a) {
    case Activation::relu3: return "relu3";
    case Activation::tanh_out: return "tanh";
    case Activation::softplus: return "softplus";
    case Activation::identity: return "identity";
  }
  return "?";
}

ActDerivs activation_derivs(Activation a, double t) {
  switch (a) {
    case Activation::relu3: {
      if (t > 0.0) return {t * t * t, 3.0 * t * t, 6.0 * t, 6.0};
      return {0.0, 0.0, 0.0, 0.0};
    }
    case Activation::tanh_out: {
      const double f = std::tanh(t);
      const double fp = 1.0 - f * f;
      const double fpp = -2.0 * f * fp;
      const double fppp = -2.0 * (fp * fp + f * fpp);
      return {f, fp, fpp, fppp};
    }
    case Activation::softplus: {
      // log(1 + e^t), evaluated stably
      const double f = t > 30.0 ? t : std::log1p(std::exp(std::min(t, 30.0)));
      const double s = 1.0 / (1.0 + std::exp(-t));
      const double fp = s;
      const double fpp = s * (1.0 - s);
      const double fppp = fpp * (1.0 - 2.0 * s);
      return {f, fp, fpp, fppp};
    }
    case Activation::identity: return {t, 1.0, 0.0, 0.0};
  }
  return {0.0, 0.0, 0.0, 0.0};
}

MlpNetwork::MlpNetwork(std::vector<int> widths, Activation hidden, Activation output,
                       double output_scale)
    : widths_(std::move(widths)),
      hidden_act_(hidden),
      output_act_(output),
      output_scale_(output_scale) {
  if (widths_.size() < 2) throw std::invalid_argument("network needs at least two layer widths");
  for (int w : widths_)
    if (w < 1) throw std::invalid_argument("layer widths must be >= 1");
  for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
    weights_.emplace_back(Eigen::MatrixXd::Zero(widths_[l + 1], widths_[l]));
    biases_.emplace_back(Eigen::VectorXd::Zero(widths_[l + 1]));
  }
}

MlpNetwork MlpNetwork::init(const std::vector<int>& widths, InitScheme scheme,
                            std::uint64_t seed, Activation hidden, Activation output,
                            double output_scale) {
  MlpNetwork net(widths, hidden, output, output_scale);
  net.seed_ = seed;
  std::mt19937_64 rng(seed);
  for (int l = 0; l < net.num_layers(); ++l) {
    const int fan_in = widths[l];
    const int fan_out = widths[l + 1];
    const bool use_he = scheme == InitScheme::he || (scheme == InitScheme::mixed && l == 0);
    if (use_he) {
      std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / fan_in));
      for (int i = 0; i < fan_out; ++i)
        for (int j = 0; j < fan_in; ++j) net.weights_[l](i, j) = dist(rng);
    } else {
      const double a = std::sqrt(6.0 / (fan_in + fan_out));
      std::uniform_real_distribution<double> dist(-a, a);
      for (int i = 0; i < fan_out; ++i)
        for (int j = 0; j < fan_in; ++j) net.weights_[l](i, j) = dist(rng);
    }
    // biases stay zero
  }
  return net;
}

int MlpNetwork::parameter_count() const {
  int n = 0;
  for (int l = 0; l < num_layers(); ++l)
    n += static_cast<int>(weights_[l].size() + biases_[l].size());
  return n;
}

Eigen::VectorXd MlpNetwork::pack_params() const {
  Eigen::VectorXd flat(parameter_count());
  int k = 0;
  for (int l = 0; l < num_layers(); ++l) {
    const auto& W = weights_[l];
    for (int i = 0; i < W.rows(); ++i)
      for (int j = 0; j < W.cols(); ++j) flat[k++] = W(i, j);
    for (int i = 0; i < biases_[l].size(); ++i) flat[k++] = biases_[l][i];
  }
  return flat;
}

void MlpNetwork::set_params(const Eigen::VectorXd& flat) {
  if (flat.size() != parameter_count()) throw std::invalid_argument("parameter size mismatch");
  int k = 0;
  for (int l = 0; l < num_layers(); ++l) {
    auto& W = weights_[l];
    for (int i = 0; i < W.rows(); ++i)
      for (int j = 0; j < W.cols(); ++j) W(i, j) = flat[k++];
    for (int i = 0; i < biases_[l].size(); ++i) biases_[l][i] = flat[k++];
  }
  ++version_;
}

Eigen::VectorXd MlpNetwork::forward(double x, double y) const {
  if (input_dim() != 2) throw std::invalid_argument("network input width must be 2");
  Eigen::VectorXd a(2);
  a << x, y;
  for (int l = 0; l < num_layers(); ++l) {
    Eigen::VectorXd z = weights_[l] * a + biases_[l];
    const bool last = l + 1 == num_layers();
    const Activation act = last ? output_act_ : hidden_act_;
    a.resize(z.size());
    for (int i = 0; i < z.size(); ++i) {
      const ActDerivs d = activation_derivs(act, z[i]);
      a[i] = last ? output_scale_ * d.f : d.f;
    }
  }
  return a;
}

void MlpNetwork::forward_jets(double x, double y, ad::Jet* out, JetTrace* trace) const {
  if (input_dim() != 2) throw std::invalid_argument("network input width must be 2");
  JetMat a(6, 2);
  a.setZero();
  a(0, 0) = x;
  a(1, 0) = 1.0;
  a(0, 1) = y;
  a(2, 1) = 1.0;
  if (trace) {
    trace->post.clear();
    trace->pre.clear();
    trace->post.push_back(a);
  }
  for (int l = 0; l < num_layers(); ++l) {
    JetMat z = a * weights_[l].transpose();
    z.row(0) += biases_[l].transpose();
    if (trace) trace->pre.push_back(z);
    const bool last = l + 1 == num_layers();
    const Activation act = last ? output_act_ : hidden_act_;
    const double s = last ? output_scale_ : 1.0;
    JetMat post(6, z.cols());
    for (int i = 0; i < z.cols(); ++i) {
      const ActDerivs d = activation_derivs(act, z(0, i));
      const double gx = z(1, i), gy = z(2, i);
      post(0, i) = s * d.f;
      post(1, i) = s * d.fp * gx;
      post(2, i) = s * d.fp * gy;
      post(3, i) = s * (d.fpp * gx * gx + d.fp * z(3, i));
      post(4, i) = s * (d.fpp * gx * gy + d.fp * z(4, i));
      post(5, i) = s * (d.fpp * gy * gy + d.fp * z(5, i));
    }
    a = std::move(post);
    if (trace && !last) trace->post.push_back(a);
  }
  for (int c = 0; c < output_dim(); ++c) {
    out[c].v = a(0, c);
    out[c].g = {a(1, c), a(2, c)};
    out[c].hxx = a(3, c);
    out[c].hxy = a(4, c);
    out[c].hyy = a(5, c);
  }
}

void MlpNetwork::backward_jets(const JetTrace& trace, const ad::Jet* out_adjoint,
                               Eigen::Ref<Eigen::VectorXd> grad) const {
  const int L = num_layers();
  JetMat adj(6, output_dim());
  for (int c = 0; c < output_dim(); ++c) {
    adj(0, c) = out_adjoint[c].v;
    adj(1, c) = out_adjoint[c].g[0];
    adj(2, c) = out_adjoint[c].g[1];
    adj(3, c) = out_adjoint[c].hxx;
    adj(4, c) = out_adjoint[c].hxy;
    adj(5, c) = out_adjoint[c].hyy;
  }
  // parameter offsets of the packed layout, per layer
  std::vector<int> offset(L);
  int k = 0;
  for (int l = 0; l < L; ++l) {
    offset[l] = k;
    k += static_cast<int>(weights_[l].size() + biases_[l].size());
  }
  for (int l = L - 1; l >= 0; --l) {
    const bool last = l + 1 == L;
    const Activation act = last ? output_act_ : hidden_act_;
    const double s = last ? output_scale_ : 1.0;
    const JetMat& z = trace.pre[l];
    JetMat adj_z(6, z.cols());
    for (int i = 0; i < z.cols(); ++i) {
      const ActDerivs d = activation_derivs(act, z(0, i));
      const double gx = z(1, i), gy = z(2, i);
      const double Av = adj(0, i) * s, Agx = adj(1, i) * s, Agy = adj(2, i) * s;
      const double Axx = adj(3, i) * s, Axy = adj(4, i) * s, Ayy = adj(5, i) * s;
      adj_z(0, i) = d.fp * Av + d.fpp * (gx * Agx + gy * Agy) +
                    (d.fppp * gx * gx + d.fpp * z(3, i)) * Axx +
                    (d.fppp * gx * gy + d.fpp * z(4, i)) * Axy +
                    (d.fppp * gy * gy + d.fpp * z(5, i)) * Ayy;
      adj_z(1, i) = d.fp * Agx + 2.0 * d.fpp * gx * Axx + d.fpp * gy * Axy;
      adj_z(2, i) = d.fp * Agy + 2.0 * d.fpp * gy * Ayy + d.fpp * gx * Axy;
      adj_z(3, i) = d.fp * Axx;
      adj_z(4, i) = d.fp * Axy;
      adj_z(5, i) = d.fp * Ayy;
    }
    // dL/dW = adj_z^T * a_prev (out x in), dL/db_i = adj_z(0, i)
    const JetMat& a_prev = trace.post[l];
    Eigen::MatrixXd dW = adj_z.transpose() * a_prev;
    const int rows = static_cast<int>(dW.rows());
    const int cols = static_cast<int>(dW.cols());
    int p = offset[l];
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) grad[p++] += dW(i, j);
    for (int i = 0; i < rows; ++i) grad[p++] += adj_z(0, i);
    if (l > 0) adj = adj_z * weights_[l];  // adjoint of a_{l-1}
  }
}

namespace {
constexpr char kMagic[8] = {'C', 'P', 'I', 'N', 'N', 'N', 'E', 'T'};
constexpr std::uint32_t kVersion = 1;

std::uint8_t act_tag(Activation a) { return static_cast<std::uint8_t>(a); }
Activation act_from_tag(std::uint8_t t) {
  if (t > 3) throw std::runtime_error("bad activation tag in snapshot");
  return static_cast<Activation>(t);
}
}  // namespace

void MlpNetwork::save_snapshot(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open snapshot file for writing: " + path);
  f.write(kMagic, 8);
  auto put_u32 = [&](std::uint32_t v) { f.write(reinterpret_cast<const char*>(&v), 4); };
  auto put_u64 = [&](std::uint64_t v) { f.write(reinterpret_cast<const char*>(&v), 8); };
  auto put_f64 = [&](double v) { f.write(reinterpret_cast<const char*>(&v), 8); };
  put_u32(kVersion);
  put_u32(static_cast<std::uint32_t>(widths_.size()));
  for (int w : widths_) put_u32(static_cast<std::uint32_t>(w));
  const std::uint8_t tags[2] = {act_tag(hidden_act_), act_tag(output_act_)};
  f.write(reinterpret_cast<const char*>(tags), 2);
  put_f64(output_scale_);
  put_u64(seed_);
  const Eigen::VectorXd flat = pack_params();
  for (int i = 0; i < flat.size(); ++i) put_f64(flat[i]);
  if (!f) throw std::runtime_error("snapshot write failed: " + path);
}

MlpNetwork MlpNetwork::load_snapshot(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open snapshot file: " + path);
  char magic[8];
  f.read(magic, 8);
  if (!f || std::memcmp(magic, kMagic, 8) != 0) throw std::runtime_error("bad snapshot magic");
  auto get_u32 = [&]() { std::uint32_t v; f.read(reinterpret_cast<char*>(&v), 4); return v; };
  auto get_u64 = [&]() { std::uint64_t v; f.read(reinterpret_cast<char*>(&v), 8); return v; };
  auto get_f64 = [&]() { double v; f.read(reinterpret_cast<char*>(&v), 8); return v; };
  if (get_u32() != kVersion) throw std::runtime_error("unsupported snapshot version");
  const std::uint32_t nw = get_u32();
  if (nw < 2 || nw > 64) throw std::runtime_error("bad snapshot width count");
  std::vector<int> widths(nw);
  for (auto& w : widths) w = static_cast<int>(get_u32());
  std::uint8_t tags[2];
  f.read(reinterpret_cast<char*>(tags), 2);
  const double scale = get_f64();
  const std::uint64_t seed = get_u64();
  MlpNetwork net(widths, act_from_tag(tags[0]), act_from_tag(tags[1]), scale);
  net.seed_ = seed;
  Eigen::VectorXd flat(net.parameter_count());
  for (int i = 0; i < flat.size(); ++i) flat[i] = get_f64();
  if (!f) throw std::runtime_error("snapshot truncated: " + path);
  net.set_params(flat);
  return net;
}

Eigen::VectorXd NetworkPair::pack_params() const {
  Eigen::VectorXd flat(total_parameter_count());
  flat << u_net.pack_params(), lambda_net.pack_params();
  return flat;
}

void NetworkPair::set_params(const Eigen::VectorXd& flat) {
  const int nu = u_net.parameter_count();
  u_net.set_params(flat.head(nu));
  lambda_net.set_params(flat.tail(flat.size() - nu));
}

}  // namespace cpinn::net
