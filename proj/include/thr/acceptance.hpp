#pragma once

// The acceptance suite: one pass/fail verdict per numbered criterion, shared
// by the acceptance test binary and `thr selftest`.

#include <functional>
#include <string>
#include <vector>

namespace thr {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// `progress` receives one line before each criterion starts.
std::vector<CriterionResult> run_acceptance(const std::function<void(const std::string&)>& progress = {});

/// "[PASS] 1 title (0.01 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace thr
