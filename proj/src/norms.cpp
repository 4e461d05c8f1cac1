#include "cpinn/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cpinn::norms {

double discrete_ltau(const SampledField& field, double tau) {
  if (field.values.empty()) throw std::invalid_argument("empty field");
  if (std::isinf(tau)) {
    double m = 0.0;
    for (double v : field.values) m = std::max(m, std::fabs(v));
    return m;
  }
  if (tau < 1.0) throw std::invalid_argument("tau must be >= 1");
  double s = 0.0;
  for (double v : field.values) s += std::pow(std::fabs(v), tau);
  return std::pow(s / static_cast<double>(field.values.size()), 1.0 / tau);
}

HHalfResult discrete_hhalf(const SampledField& bfield, int d) {
  const std::size_t m = bfield.points.size();
  if (m < 2) throw std::invalid_argument("need at least two boundary points");
  if (bfield.values.size() != m) throw std::invalid_argument("points/values length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double dx = bfield.points[i][0] - bfield.points[j][0];
      const double dy = bfield.points[i][1] - bfield.points[j][1];
      const double dist2 = dx * dx + dy * dy;
      if (dist2 == 0.0) throw std::invalid_argument("duplicate boundary points");
      const double dv = bfield.values[i] - bfield.values[j];
      // ordered pairs count each unordered pair twice
      sum += 2.0 * dv * dv / std::pow(std::sqrt(dist2), static_cast<double>(d));
    }
  }
  HHalfResult r;
  r.seminorm = std::sqrt(sum / (static_cast<double>(m) * static_cast<double>(m)));
  r.norm = discrete_ltau(bfield, 2.0) + r.seminorm;
  return r;
}

double discrete_h1(const SampledField& field, int N, double spacing) {
  const std::size_t m = field.values.size();
  if (N < 2 || m != static_cast<std::size_t>(N) * N)
    throw std::invalid_argument("field is not a full N x N tensor grid");
  const auto at = [&](int i, int j) { return field.values[static_cast<std::size_t>(i) * N + j]; };
  double l2 = 0.0, grad2 = 0.0;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const double v = at(i, j);
      l2 += v * v;
      double gx, gy;
      if (i == 0)
        gx = (at(1, j) - at(0, j)) / spacing;
      else if (i == N - 1)
        gx = (at(N - 1, j) - at(N - 2, j)) / spacing;
      else
        gx = (at(i + 1, j) - at(i - 1, j)) / (2.0 * spacing);
      if (j == 0)
        gy = (at(i, 1) - at(i, 0)) / spacing;
      else if (j == N - 1)
        gy = (at(i, N - 1) - at(i, N - 2)) / spacing;
      else
        gy = (at(i, j + 1) - at(i, j - 1)) / (2.0 * spacing);
      grad2 += gx * gx + gy * gy;
    }
  }
  const double mm = static_cast<double>(m);
  return std::sqrt(l2 / mm + grad2 / mm);
}

double discrete_duality(const SampledField& lam, const SampledField& gap) {
  if (lam.values.size() != gap.values.size() || lam.values.empty())
    throw std::invalid_argument("duality fields must share a nonempty point set");
  double s = 0.0;
  for (std::size_t i = 0; i < lam.values.size(); ++i) s += lam.values[i] * gap.values[i];
  return s / static_cast<double>(lam.values.size());
}

double discrete_duality_abs(const SampledField& lam, const SampledField& gap) {
  if (lam.values.size() != gap.values.size() || lam.values.empty())
    throw std::invalid_argument("duality fields must share a nonempty point set");
  double s = 0.0;
  for (std::size_t i = 0; i < lam.values.size(); ++i)
    s += std::fabs(lam.values[i] * gap.values[i]);
  return s / static_cast<double>(lam.values.size());
}

double recovery_residual(int N, const RecoveryExponents& exps) {
  if (N < 2) throw std::invalid_argument("N must be >= 2");
  if (exps.s <= 0.0 || exps.s_bar <= 0.0 || exps.s_check <= 0.0)
    throw std::invalid_argument("exponents must be positive");
  const double m_tilde = static_cast<double>(N) * N;
  const double m_bar = 4.0 * (N - 1);
  const double d = static_cast<double>(exps.d);
  const double t1 = std::pow(m_tilde, -2.0 * exps.s / d);
  const double t2 = std::pow(m_bar, -2.0 * (exps.s_bar - 1.0) / (d - 1.0));
  const double t3 = std::pow(m_tilde, -2.0 * (exps.s_check - 1.0) / d);
  return std::max({t1, t2, t3});
}

}  // namespace cpinn::norms
