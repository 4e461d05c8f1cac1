#pragma once

#include <vector>

#include "cpinn/geometry.hpp"

namespace cpinn::norms {

/// Pointwise samples of a scalar field.
struct SampledField {
  std::vector<geom::Point> points;
  std::vector<double> values;
};

/// Besov smoothness exponents (s for the forcing, s_bar for the boundary
/// data, s_check for the obstacle) in dimension d.
struct RecoveryExponents {
  double s = 2.0;
  double s_bar = 2.0;
  double s_check = 3.0;
  int d = 2;
};

/// Discrete L^tau norm: [ (1/m) sum |f_i|^tau ]^{1/tau}; max for tau = inf.
double discrete_ltau(const SampledField& field, double tau);

struct HHalfResult {
  double seminorm = 0.0;
  double norm = 0.0;  // discrete boundary L2 + seminorm
};

/// Averaged pairwise difference quotient over boundary samples; exponent d
/// on the distance. Throws on duplicate points.
HHalfResult discrete_hhalf(const SampledField& bfield, int d);

/// Discrete H^1 norm of a field sampled on a full N x N tensor grid with the
/// given spacing: sqrt(L2^2 + grad-L2^2), gradient by central differences
/// inside and one-sided differences on the grid edge.
double discrete_h1(const SampledField& field, int N, double spacing);

/// (1/m) sum lam_i * gap_i, signed.
double discrete_duality(const SampledField& lam, const SampledField& gap);
/// (1/m) sum |lam_i * gap_i| (the loss-term variant).
double discrete_duality_abs(const SampledField& lam, const SampledField& gap);

/// Best-possible recovery rate from m_tilde = N^2 interior and
/// m_bar = 4(N-1) boundary samples:
/// max{ m_tilde^(-2s/d), m_bar^(-2(s_bar-1)/(d-1)), m_tilde^(-2(s_check-1)/d) }.
double recovery_residual(int N, const RecoveryExponents& exps);

}  // namespace cpinn::norms
