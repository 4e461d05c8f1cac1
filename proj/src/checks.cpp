#include "cpinn/checks.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "cpinn/losses.hpp"
#include "cpinn/norms.hpp"
#include "cpinn/problems.hpp"

namespace cpinn::checks {

namespace {

using geom::Point;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

CheckResult check_autodiff(const CheckTweaks& tweaks) {
  CheckResult r{"autodiff", true, ""};
  net::MlpNetwork n = net::MlpNetwork::init({2, 15, 15, 15, 1}, net::InitScheme::mixed, 7);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  const double h = 1e-4;
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double x = unif(rng), y = unif(rng);
    ad::Jet jet;
    n.forward_jets(x, y, &jet);
    if (tweaks.corrupt_hessian) jet.hxy *= 1.01;
    auto val = [&](double a, double b) { return n.forward(a, b)[0]; };
    const double gx = (val(x + h, y) - val(x - h, y)) / (2 * h);
    const double gy = (val(x, y + h) - val(x, y - h)) / (2 * h);
    const double hxx = (val(x + h, y) - 2 * val(x, y) + val(x - h, y)) / (h * h);
    const double hyy = (val(x, y + h) - 2 * val(x, y) + val(x, y - h)) / (h * h);
    const double hxy = (val(x + h, y + h) - val(x + h, y - h) - val(x - h, y + h) +
                        val(x - h, y - h)) / (4 * h * h);
    auto rel = [](double a, double b) {
      const double d = std::fabs(a - b);
      const double s = std::max({std::fabs(a), std::fabs(b), 1e-8});
      return d / s;
    };
    worst = std::max({worst, rel(jet.g[0], gx), rel(jet.g[1], gy)});
    // FD second differences carry ~1e-7 truncation noise; 1e-4 screens real breakage
    const double hess_tol = 1e-4;
    const double hw = std::max({rel(jet.hxx, hxx), rel(jet.hyy, hyy), rel(jet.hxy, hxy)});
    if (hw > hess_tol || worst > 1e-5) {
      r.pass = false;
      r.detail = "jet mismatch vs finite differences: " + fmt(std::max(hw, worst));
      return r;
    }
  }
  r.detail = "gradients/Hessians match finite differences";
  return r;
}

CheckResult check_norm_identities() {
  CheckResult r{"norms", true, ""};
  // brute-force corner value of the pairwise difference quotient
  norms::SampledField corners;
  corners.points = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  corners.values = {0, 1, 0, 1};
  const double semi = norms::discrete_hhalf(corners, 2).seminorm;
  if (std::fabs(semi - std::sqrt(6.0 / 16.0)) > 1e-12) {
    r.pass = false;
    r.detail = "corner difference quotient = " + fmt(semi);
    return r;
  }
  // homogeneity
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  norms::SampledField f;
  for (int i = 0; i < 40; ++i) {
    f.points.push_back({unif(rng), unif(rng)});
    f.values.push_back(unif(rng));
  }
  norms::SampledField f3 = f;
  for (auto& v : f3.values) v *= -3.0;
  if (std::fabs(norms::discrete_ltau(f3, 2.0) - 3.0 * norms::discrete_ltau(f, 2.0)) > 1e-12) {
    r.pass = false;
    r.detail = "L2 homogeneity broken";
    return r;
  }
  r.detail = "corner quotient and homogeneity hold";
  return r;
}

CheckResult check_manufactured_zeros() {
  CheckResult r{"manufactured", true, ""};
  std::mt19937_64 rng(17);
  for (const std::string& id : prob::problem_ids()) {
    const prob::BenchmarkProblem pb = prob::make_problem(id);
    const prob::PairEval pair = prob::exact_pair(pb);
    std::uniform_real_distribution<double> ux(pb.domain.lo[0], pb.domain.hi[0]);
    std::uniform_real_distribution<double> uy(pb.domain.lo[1], pb.domain.hi[1]);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const Point p{ux(rng), uy(rng)};
      for (double v : prob::pde_residual(pb, pair, p)) worst = std::max(worst, std::fabs(v));
    }
    if (worst > 1e-10) {
      r.pass = false;
      r.detail = id + " residual " + fmt(worst);
      return r;
    }
    const geom::CollocationSets sets = geom::build_grids(pb.domain, 15);
    loss::LossConfig cfg;
    for (auto variant : {loss::Variant::pinn_mixed, loss::Variant::cpinn_mixed}) {
      cfg.variant = variant;
      const double total = loss::evaluate(pb, pair, sets, cfg).total;
      if (total > 1e-18) {
        r.pass = false;
        r.detail = id + " exact-pair loss " + fmt(total);
        return r;
      }
    }
  }
  r.detail = "exact pairs annihilate residuals and losses";
  return r;
}

CheckResult check_recovery_table(const CheckTweaks& tweaks) {
  CheckResult r{"recovery-residual", true, ""};
  norms::RecoveryExponents exps;
  if (tweaks.corrupt_ru_exponents) exps.s_bar = 2.2;
  const int Ns[6] = {5, 10, 15, 20, 25, 30};
  const double printed[6] = {3.90e-3, 7.71e-4, 3.18e-4, 1.73e-4, 1.08e-4, 7.43e-5};
  for (int i = 0; i < 6; ++i) {
    const double got = norms::recovery_residual(Ns[i], exps);
    if (std::fabs(got - printed[i]) / printed[i] > 5e-3) {
      r.pass = false;
      r.detail = "N=" + std::to_string(Ns[i]) + " residual " + fmt(got) + " vs " + fmt(printed[i]);
      return r;
    }
  }
  r.detail = "all six residual values match";
  return r;
}

}  // namespace

std::vector<CheckResult> run_fast_checks(const CheckTweaks& tweaks) {
  std::vector<CheckResult> results;
  results.push_back(check_autodiff(tweaks));
  results.push_back(check_norm_identities());
  results.push_back(check_manufactured_zeros());
  results.push_back(check_recovery_table(tweaks));
  return results;
}

}  // namespace cpinn::checks
