#pragma once

#include <string>
#include <vector>

namespace cpinn::checks {

/// Deliberate corruption hooks so the negative paths of the self-check are
/// testable: each tweak must flip its group to FAIL.
struct CheckTweaks {
  bool corrupt_hessian = false;        // perturbs the cross derivative
  bool corrupt_ru_exponents = false;   // perturbs the boundary smoothness
};

struct CheckResult {
  std::string group;
  bool pass = false;
  std::string detail;
};

/// Fast verification suite: autodiff against finite differences, discrete
/// norm identities, manufactured-solution residual zeros, recovery-residual
/// table match. Runs in seconds.
std::vector<CheckResult> run_fast_checks(const CheckTweaks& tweaks = {});

}  // namespace cpinn::checks
