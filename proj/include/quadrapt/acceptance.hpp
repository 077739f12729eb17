#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace quadrapt {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  /// empty: run all
  std::vector<int> only;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

/// One "PASS|FAIL  #id name (time) detail" line per criterion.
std::string acceptance_table(const std::vector<CriterionResult>& results);

}  // namespace quadrapt
