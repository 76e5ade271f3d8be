#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "multisect/config.hpp"

// The acceptance suite: one pass/fail result per criterion.
namespace multisect::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values, or the error that stopped the check
  double seconds = 0.0;
};

struct Summary {
  std::vector<CriterionResult> results;
  bool degraded = false;  // the configuration loosened some tolerance
  bool all_pass() const;
};

constexpr int kCriteria = 14;

// Runs one criterion (1..14). Library errors are caught and reported as failures.
CriterionResult run_criterion(int id, const RunConfig& config);
// Runs the selected criteria (all when empty). Throws InputError if the loop file
// cannot be read, before any criterion runs.
Summary run_all(const RunConfig& config, const std::vector<int>& only = {});

// "criterion 3 [hesse-configuration]: PASS (0.01 s) lines=12 ..."; without timings the
// output depends only on the configuration.
std::string format_line(const CriterionResult& r, bool timings = true);
void write_summary(std::ostream& out, const Summary& s, bool timings = true);

}  // namespace multisect::acceptance
