#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gsalloc {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationOptions {
  std::uint64_t seed = 7;
  int oracle_instances = 500;   // random small instances vs the oracle
  int property_cases = 1000;    // randomized cases per invariant
};

// Oracle-equivalence, invariant, and determinism checks. Each result is one
// machine-readable pass/fail line; the suite passes iff every check does.
std::vector<CheckResult> run_validation(const ValidationOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace gsalloc
