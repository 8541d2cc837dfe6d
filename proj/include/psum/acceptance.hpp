#pragma once

#include <string>
#include <vector>

namespace psum {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;  // multi-line evidence, indented for display
  double seconds = 0.0;
};

// Runs acceptance criterion `id` (1..13). Each run is self-contained and
// side-effect free apart from config budget adjustments documented per
// criterion.
CriterionResult run_criterion(int id);

inline constexpr int kCriterionCount = 13;

std::vector<CriterionResult> run_all_criteria();

}  // namespace psum
