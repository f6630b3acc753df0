#pragma once

#include <string>
#include <vector>

namespace regcal::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the ten end-to-end checks in order. Exceptions inside a check are
/// reported as a failure of that check.
std::vector<CriterionResult> run_all(int threads = 1);

/// "PASS  3  title  (detail)" style line.
std::string format(const CriterionResult& result);

}  // namespace regcal::acceptance
