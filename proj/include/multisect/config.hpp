#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "multisect/elliptic.hpp"
#include "multisect/monodromy.hpp"

namespace multisect {

// Run parameters shared by the command line tool and the acceptance suite.
struct RunConfig {
  double on_curve_tol = 1e-9;
  double matching_tol = 1e-7;
  double collinearity_tol = 1e-8;
  int m_max = 6;
  int n_max = 18;
  double tracker_initial_step = 1.0 / 64.0;
  double tracker_min_step = 1e-6;
  double tracker_ratio = 0.4;
  std::uint64_t seed = 20240501;
  std::string loops;  // loop file; empty means the shipped default
  std::string out;    // report destination; empty means stdout

  // Throws InputError for nonpositive tolerances or out-of-range limits.
  void validate() const;
  // True when some tolerance is looser than its default.
  bool degraded() const;
  // Sets all three tolerances.
  void set_tolerance(double tol);

  elliptic::Tolerances tolerances() const;
  monodromy::TrackerOptions tracker() const;
  std::string loops_path() const;
};

// Lines "key = value"; keys are the field names above. Unknown keys are errors.
RunConfig read_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});
void write_config(std::ostream& out, const RunConfig& c);

// Directory holding the shipped data files.
std::string data_dir();

}  // namespace multisect
