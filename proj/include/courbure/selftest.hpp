#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace courbure {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// Runs the full verification suite (criteria 1-12), streaming one
// pass/fail line per criterion to `out`.
std::vector<CriterionResult> run_acceptance(std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace courbure
