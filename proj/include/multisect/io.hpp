#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "multisect/cubic.hpp"

// Text formats: curves, point lists and key:value reports. Numbers are written
// with 17 significant digits so that values round-trip exactly.
namespace multisect::io {

std::string format_double(double v);
std::string format_complex(Complex z);  // "re im"

// "multisect-curve 1" header, then one "i j k re im" line per monomial x^i y^j z^k.
// Missing monomials are zero. '#' starts a comment line.
cubic::CubicForm read_curve(std::istream& in);
cubic::CubicForm load_curve(const std::string& path);
void write_curve(std::ostream& out, const cubic::CubicForm& F);

// "multisect-points 1" header, then "xr xi yr yi zr zi" per point.
std::vector<cubic::ProjPoint> read_points(std::istream& in);
std::vector<cubic::ProjPoint> load_points(const std::string& path);
void write_points(std::ostream& out, const std::vector<cubic::ProjPoint>& pts);

// Ordered key:value report with a "multisect-report 1" header.
class Report {
 public:
  explicit Report(std::string command);

  Report& add(const std::string& key, const std::string& value);
  Report& add(const std::string& key, const char* value) { return add(key, std::string(value)); }
  Report& add(const std::string& key, double value);
  Report& add(const std::string& key, Complex value);
  Report& add(const std::string& key, long long value);
  Report& add(const std::string& key, int value) { return add(key, static_cast<long long>(value)); }
  Report& add(const std::string& key, std::size_t value) { return add(key, static_cast<long long>(value)); }
  Report& add(const std::string& key, bool value);
  Report& add_point(const std::string& key, const cubic::ProjPoint& p);

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  void write(std::ostream& out) const;
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace multisect::io
