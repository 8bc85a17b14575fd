#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace szilard {

/// Outcome of one acceptance criterion. `measured` is compared against
/// `limit` with `relation` ("<=" or ">="); `detail` names the worst case.
struct CheckResult {
  std::string id;
  std::string name;
  double measured = 0.0;
  std::string relation = "<=";
  double limit = 0.0;
  bool passed = false;
  std::string detail;
};

/// Runs every acceptance criterion; random samples are drawn from `seed`.
std::vector<CheckResult> run_acceptance_checks(std::uint64_t seed);

/// One fixed-format line per check.
std::string format_check_line(const CheckResult& check);

}  // namespace szilard
