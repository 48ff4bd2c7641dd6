#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace levy::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs every criterion in order and prints one PASS/FAIL line per criterion as it finishes.
std::vector<CriterionResult> run_all(std::ostream& os);

// Criteria with the given ids only; empty means all.
std::vector<CriterionResult> run(std::ostream& os, const std::vector<int>& ids);

}  // namespace levy::acceptance
