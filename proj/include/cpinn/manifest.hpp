#pragma once

#include <cstdint>
#include <string>

#include "cpinn/losses.hpp"
#include "cpinn/optimizer.hpp"

namespace cpinn::io {

/// Flat key=value description of one run. Serialization is canonical
/// (fixed key order, round-trip exact doubles).
struct RunManifest {
  std::string exp = "exp1";
  std::string variant = "cpinn";  // pinn | cpinn
  int n = 15;
  std::uint64_t seed = 1;
  int epochs = 500;
  double step = 1.0;
  double damping = 1e-6;
  double backtrack_factor = 0.5;
  int max_backtracks = 20;
  std::string constraint = "literal";  // literal | hard-lambda | hinge
  double hinge_weight = 1.0;
  double nu = 0.3;
  double e_modulus = 1.0;
  double r = 0.7;
  std::string out = "out";
  int eval_res = 201;
  bool timing = false;

  loss::Variant loss_variant() const;
  loss::LossConfig loss_config() const;
  opt::EngdConfig engd_config() const;
  prob::ProblemOptions problem_options() const;
};

std::string serialize(const RunManifest& m);
RunManifest parse_manifest(const std::string& text);
RunManifest load_manifest(const std::string& path);
void save_manifest(const RunManifest& m, const std::string& path);

loss::Variant variant_from_string(const std::string& s);
loss::ConstraintMode constraint_from_string(const std::string& s);

}  // namespace cpinn::io
