// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: acceptance [seed]

#include <cstdint>
#include <cstdlib>
#include <iostream>

#include "szilard/validation.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 12345;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);

  int failures = 0;
  const auto checks = szilard::run_acceptance_checks(seed);
  for (const auto& check : checks) {
    std::cout << szilard::format_check_line(check) << "\n";
    if (!check.passed) ++failures;
  }
  std::cout << (checks.size() - failures) << "/" << checks.size() << " criteria passed (seed "
            << seed << ")\n";
  return failures == 0 ? 0 : 1;
}
