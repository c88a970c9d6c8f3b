#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cdlab {

struct CheckResult {
  std::string name;
  double discrepancy = 0.0;  // max |closed form - oracle|; negative margin for ordering checks
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  int max_n = 6;  // permutation enumeration cap; must be <= 8
  std::vector<double> alpha_fracs{0.1, 0.5, 0.9};  // alpha = frac / (n-1)
  std::optional<double> tol_override;
};

// Runs every closed-form-versus-oracle cross check: brute-force permutation
// enumeration, the gamma and geometric-sum identities, eigen-estimates of the
// built matrices against the scalar formulas, and the rate orderings.
std::vector<CheckResult> run_verify(const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);
std::string format_report(const std::vector<CheckResult>& results);

}  // namespace cdlab
