#pragma once

#include <string>
#include <vector>

namespace tc::harness {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

std::vector<int> criterion_ids();
CriterionResult run_criterion(int id);
std::string format_line(const CriterionResult& r);

}  // namespace tc::harness
