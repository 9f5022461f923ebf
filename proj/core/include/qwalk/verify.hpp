#pragma once

#include <string>
#include <vector>

namespace qwalk {

struct VerifyItem {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Reproduces the worked values and checks the structural identities:
/// measure tables, sign patterns, preclusion censuses, limits, set systems,
/// integrals, and the randomized property suites. Deterministic seeds.
std::vector<VerifyItem> run_verification_suite();

}  // namespace qwalk
