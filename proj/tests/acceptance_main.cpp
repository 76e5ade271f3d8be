// Runs every acceptance criterion with the default configuration and prints one
// line per criterion. Exit status is nonzero if any criterion fails.
#include <iostream>

#include "multisect/acceptance.hpp"

int main() {
  const auto summary = multisect::acceptance::run_all(multisect::RunConfig{});
  multisect::acceptance::write_summary(std::cout, summary);
  return summary.all_pass() ? 0 : 1;
}
