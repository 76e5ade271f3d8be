#include "multisect/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "multisect/errors.hpp"
#include "multisect/io.hpp"

#ifndef MULTISECT_DATA_DIR
#define MULTISECT_DATA_DIR "data"
#endif

namespace multisect {

namespace {

const RunConfig kDefaults{};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::logic_error&) {
  }
  throw InputError("config: bad value for " + key + ": '" + v + "'");
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long d = std::stoll(v, &used);
    if (used == v.size()) return d;
  } catch (const std::logic_error&) {
  }
  throw InputError("config: bad integer for " + key + ": '" + v + "'");
}

}  // namespace

void RunConfig::validate() const {
  for (const auto& [name, v] : {std::pair<const char*, double>{"on_curve_tol", on_curve_tol},
                                {"matching_tol", matching_tol},
                                {"collinearity_tol", collinearity_tol},
                                {"tracker_initial_step", tracker_initial_step},
                                {"tracker_min_step", tracker_min_step}})
    if (!(v > 0.0)) throw InputError(std::string("config: ") + name + " must be positive");
  if (!(tracker_ratio > 0.0 && tracker_ratio < 1.0)) throw InputError("config: tracker_ratio must be in (0, 1)");
  if (tracker_initial_step > 1.0 || tracker_min_step > tracker_initial_step)
    throw InputError("config: need tracker_min_step <= tracker_initial_step <= 1");
  if (m_max < 1 || m_max > 8) throw InputError("config: m_max must be in 1..8");
  if (n_max < 1 || n_max > 24) throw InputError("config: n_max must be in 1..24");
}

bool RunConfig::degraded() const {
  return on_curve_tol > kDefaults.on_curve_tol || matching_tol > kDefaults.matching_tol ||
         collinearity_tol > kDefaults.collinearity_tol || tracker_ratio > kDefaults.tracker_ratio;
}

void RunConfig::set_tolerance(double tol) { on_curve_tol = matching_tol = collinearity_tol = tol; }

elliptic::Tolerances RunConfig::tolerances() const {
  elliptic::Tolerances t;
  t.on_curve = on_curve_tol;
  t.identity = matching_tol;
  return t;
}

monodromy::TrackerOptions RunConfig::tracker() const {
  monodromy::TrackerOptions o;
  o.initial_step = tracker_initial_step;
  o.min_step = tracker_min_step;
  o.ratio = tracker_ratio;
  o.m_max = m_max;
  o.n_max = n_max;
  return o;
}

std::string RunConfig::loops_path() const { return loops.empty() ? data_dir() + "/hesse_loops_v1.txt" : loops; }

RunConfig read_config(std::istream& in, RunConfig c) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw InputError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq)), v = trim(t.substr(eq + 1));
    if (key == "on_curve_tol") c.on_curve_tol = parse_double(key, v);
    else if (key == "matching_tol") c.matching_tol = parse_double(key, v);
    else if (key == "collinearity_tol") c.collinearity_tol = parse_double(key, v);
    else if (key == "tolerance") c.set_tolerance(parse_double(key, v));
    else if (key == "m_max") c.m_max = static_cast<int>(parse_int(key, v));
    else if (key == "n_max") c.n_max = static_cast<int>(parse_int(key, v));
    else if (key == "tracker_initial_step") c.tracker_initial_step = parse_double(key, v);
    else if (key == "tracker_min_step") c.tracker_min_step = parse_double(key, v);
    else if (key == "tracker_ratio") c.tracker_ratio = parse_double(key, v);
    else if (key == "seed") {
      const long long s = parse_int(key, v);
      if (s < 0) throw InputError("config: seed must be nonnegative");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "loops") c.loops = v;
    else if (key == "out") c.out = v;
    else throw InputError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  return read_config(in, std::move(base));
}

void write_config(std::ostream& out, const RunConfig& c) {
  out << "on_curve_tol = " << io::format_double(c.on_curve_tol) << "\n"
      << "matching_tol = " << io::format_double(c.matching_tol) << "\n"
      << "collinearity_tol = " << io::format_double(c.collinearity_tol) << "\n"
      << "m_max = " << c.m_max << "\n"
      << "n_max = " << c.n_max << "\n"
      << "tracker_initial_step = " << io::format_double(c.tracker_initial_step) << "\n"
      << "tracker_min_step = " << io::format_double(c.tracker_min_step) << "\n"
      << "tracker_ratio = " << io::format_double(c.tracker_ratio) << "\n"
      << "seed = " << c.seed << "\n";
  if (!c.loops.empty()) out << "loops = " << c.loops << "\n";
  if (!c.out.empty()) out << "out = " << c.out << "\n";
}

std::string data_dir() {
  if (const char* env = std::getenv("MULTISECT_DATA_DIR"); env && *env) return env;
  return MULTISECT_DATA_DIR;
}

}  // namespace multisect
