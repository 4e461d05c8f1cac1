#include "cpinn/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cpinn::io {

loss::Variant variant_from_string(const std::string& s) {
  if (s == "pinn") return loss::Variant::pinn_mixed;
  if (s == "cpinn") return loss::Variant::cpinn_mixed;
  throw std::invalid_argument("unknown variant: " + s);
}

loss::ConstraintMode constraint_from_string(const std::string& s) {
  if (s == "literal") return loss::ConstraintMode::literal;
  if (s == "hard-lambda") return loss::ConstraintMode::hard_lambda;
  if (s == "hinge") return loss::ConstraintMode::hinge_penalty;
  throw std::invalid_argument("unknown constraint mode: " + s);
}

loss::Variant RunManifest::loss_variant() const { return variant_from_string(variant); }

loss::LossConfig RunManifest::loss_config() const {
  loss::LossConfig cfg;
  cfg.variant = loss_variant();
  cfg.constraint = constraint_from_string(constraint);
  cfg.hinge_weight = hinge_weight;
  return cfg;
}

opt::EngdConfig RunManifest::engd_config() const {
  opt::EngdConfig cfg;
  cfg.epochs = epochs;
  cfg.step = step;
  cfg.damping = damping;
  cfg.backtrack_factor = backtrack_factor;
  cfg.max_backtracks = max_backtracks;
  cfg.seed = seed;
  return cfg;
}

prob::ProblemOptions RunManifest::problem_options() const {
  prob::ProblemOptions o;
  o.nu = nu;
  o.E = e_modulus;
  o.r = r;
  return o;
}

namespace {
std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

std::string serialize(const RunManifest& m) {
  std::ostringstream os;
  os << "exp=" << m.exp << "\n";
  os << "variant=" << m.variant << "\n";
  os << "n=" << m.n << "\n";
  os << "seed=" << m.seed << "\n";
  os << "epochs=" << m.epochs << "\n";
  os << "step=" << fmt_double(m.step) << "\n";
  os << "damping=" << fmt_double(m.damping) << "\n";
  os << "backtrack_factor=" << fmt_double(m.backtrack_factor) << "\n";
  os << "max_backtracks=" << m.max_backtracks << "\n";
  os << "constraint=" << m.constraint << "\n";
  os << "hinge_weight=" << fmt_double(m.hinge_weight) << "\n";
  os << "nu=" << fmt_double(m.nu) << "\n";
  os << "e_modulus=" << fmt_double(m.e_modulus) << "\n";
  os << "r=" << fmt_double(m.r) << "\n";
  os << "out=" << m.out << "\n";
  os << "eval_res=" << m.eval_res << "\n";
  os << "timing=" << (m.timing ? 1 : 0) << "\n";
  return os.str();
}

RunManifest parse_manifest(const std::string& text) {
  RunManifest m;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("manifest line " + std::to_string(lineno) + " has no '='");
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    try {
      if (key == "exp") m.exp = val;
      else if (key == "variant") m.variant = val;
      else if (key == "n") m.n = std::stoi(val);
      else if (key == "seed") m.seed = std::stoull(val);
      else if (key == "epochs") m.epochs = std::stoi(val);
      else if (key == "step") m.step = std::stod(val);
      else if (key == "damping") m.damping = std::stod(val);
      else if (key == "backtrack_factor") m.backtrack_factor = std::stod(val);
      else if (key == "max_backtracks") m.max_backtracks = std::stoi(val);
      else if (key == "constraint") m.constraint = val;
      else if (key == "hinge_weight") m.hinge_weight = std::stod(val);
      else if (key == "nu") m.nu = std::stod(val);
      else if (key == "e_modulus") m.e_modulus = std::stod(val);
      else if (key == "r") m.r = std::stod(val);
      else if (key == "out") m.out = val;
      else if (key == "eval_res") m.eval_res = std::stoi(val);
      else if (key == "timing") m.timing = std::stoi(val) != 0;
      else throw std::invalid_argument("unknown manifest key: " + key);
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("bad value for manifest key " + key + ": " + val);
    }
  }
  return m;
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open manifest: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return parse_manifest(os.str());
}

void save_manifest(const RunManifest& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write manifest: " + path);
  f << serialize(m);
}

}  // namespace cpinn::io
