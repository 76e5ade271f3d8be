#include "multisect/io.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "multisect/errors.hpp"

namespace multisect::io {

namespace {

bool skip_line(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

// Reads the header line and returns the remaining content lines with their numbers.
std::vector<std::pair<int, std::string>> body_lines(std::istream& in, const std::string& magic) {
  std::vector<std::pair<int, std::string>> out;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip_line(line)) continue;
    if (!header) {
      std::istringstream is(line);
      std::string word;
      int version = 0;
      if (!(is >> word >> version) || word != magic)
        throw InputError("line " + std::to_string(lineno) + ": expected '" + magic + " 1' header");
      if (version != 1) throw InputError("unsupported " + magic + " version " + std::to_string(version));
      header = true;
      continue;
    }
    out.emplace_back(lineno, line);
  }
  if (!header) throw InputError("missing '" + magic + "' header");
  return out;
}

std::vector<double> numbers(const std::pair<int, std::string>& line, std::size_t count) {
  std::istringstream is(line.second);
  std::vector<double> v;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw InputError("line " + std::to_string(line.first) + ": bad number '" + tok + "'");
    }
  }
  if (v.size() != count)
    throw InputError("line " + std::to_string(line.first) + ": expected " + std::to_string(count) + " numbers");
  return v;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string format_complex(Complex z) { return format_double(z.real()) + " " + format_double(z.imag()); }

cubic::CubicForm read_curve(std::istream& in) {
  std::map<cubic::Exponent, Complex> terms;
  for (const auto& line : body_lines(in, "multisect-curve")) {
    const auto v = numbers(line, 5);
    cubic::Exponent e{};
    for (int i = 0; i < 3; ++i) {
      if (v[i] != static_cast<int>(v[i]) || v[i] < 0)
        throw InputError("line " + std::to_string(line.first) + ": exponents must be nonnegative integers");
      e[i] = static_cast<int>(v[i]);
    }
    if (e[0] + e[1] + e[2] != 3) throw InputError("line " + std::to_string(line.first) + ": monomial is not cubic");
    if (!terms.emplace(e, Complex(v[3], v[4])).second)
      throw InputError("line " + std::to_string(line.first) + ": repeated monomial");
  }
  return cubic::CubicForm::from_terms({terms.begin(), terms.end()});
}

cubic::CubicForm load_curve(const std::string& path) {
  auto in = open(path);
  return read_curve(in);
}

void write_curve(std::ostream& out, const cubic::CubicForm& F) {
  out << "multisect-curve 1\n";
  for (std::size_t i = 0; i < 10; ++i) {
    const Complex c = F.coefficients()[i];
    if (c == Complex(0.0, 0.0)) continue;
    const auto& e = cubic::CubicForm::monomials()[i];
    out << e[0] << " " << e[1] << " " << e[2] << " " << format_complex(c) << "\n";
  }
}

std::vector<cubic::ProjPoint> read_points(std::istream& in) {
  std::vector<cubic::ProjPoint> pts;
  for (const auto& line : body_lines(in, "multisect-points")) {
    const auto v = numbers(line, 6);
    const cubic::Vec3 p(Complex(v[0], v[1]), Complex(v[2], v[3]), Complex(v[4], v[5]));
    try {
      pts.emplace_back(p);
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(line.first) + ": " + e.what());
    }
  }
  return pts;
}

std::vector<cubic::ProjPoint> load_points(const std::string& path) {
  auto in = open(path);
  return read_points(in);
}

void write_points(std::ostream& out, const std::vector<cubic::ProjPoint>& pts) {
  out << "multisect-points 1\n";
  for (const auto& p : pts)
    out << format_complex(p[0]) << " " << format_complex(p[1]) << " " << format_complex(p[2]) << "\n";
}

Report::Report(std::string command) { add("command", command); }

Report& Report::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
  return *this;
}

Report& Report::add(const std::string& key, double value) { return add(key, format_double(value)); }
Report& Report::add(const std::string& key, Complex value) { return add(key, format_complex(value)); }
Report& Report::add(const std::string& key, long long value) { return add(key, std::to_string(value)); }
Report& Report::add(const std::string& key, bool value) { return add(key, std::string(value ? "true" : "false")); }

Report& Report::add_point(const std::string& key, const cubic::ProjPoint& p) {
  return add(key, format_complex(p[0]) + " " + format_complex(p[1]) + " " + format_complex(p[2]));
}

void Report::write(std::ostream& out) const {
  out << "multisect-report 1\n";
  for (const auto& [k, v] : entries_) out << k << ": " << v << "\n";
}

std::string Report::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace multisect::io
