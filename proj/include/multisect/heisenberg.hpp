#pragma once

#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

#include "multisect/cubic.hpp"
#include "multisect/elliptic.hpp"

// The order-27 Heisenberg group K = <A, B> inside SL3 over the Eisenstein integers,
// and its action on the Fermat cubic.
namespace multisect::heisenberg {

using BigInt = mpz_class;

// a + b zeta with zeta = exp(2 pi i / 3), zeta^2 = -1 - zeta.
struct EisensteinInt {
  BigInt a = 0, b = 0;

  EisensteinInt() = default;
  EisensteinInt(long a_, long b_ = 0) : a(a_), b(b_) {}
  EisensteinInt(BigInt a_, BigInt b_) : a(std::move(a_)), b(std::move(b_)) {}

  static EisensteinInt zeta() { return {0, 1}; }

  EisensteinInt operator+(const EisensteinInt& o) const { return {BigInt(a + o.a), BigInt(b + o.b)}; }
  EisensteinInt operator-(const EisensteinInt& o) const { return {BigInt(a - o.a), BigInt(b - o.b)}; }
  EisensteinInt operator-() const { return {BigInt(-a), BigInt(-b)}; }
  EisensteinInt operator*(const EisensteinInt& o) const;
  bool operator==(const EisensteinInt& o) const { return a == o.a && b == o.b; }
  bool operator<(const EisensteinInt& o) const { return a < o.a || (a == o.a && b < o.b); }

  EisensteinInt conj() const { return {BigInt(a - b), BigInt(-b)}; }
  BigInt norm() const { return a * a - a * b + b * b; }
  bool is_unit() const { return norm() == 1; }
  Complex to_complex() const;
  std::string to_string() const;
};

using EMatrix = std::array<std::array<EisensteinInt, 3>, 3>;

class HeisenbergElement {
 public:
  HeisenbergElement();  // identity
  // Throws InputError unless the determinant is 1.
  explicit HeisenbergElement(const EMatrix& m);

  static HeisenbergElement A();  // cyclic coordinate shift
  static HeisenbergElement B();  // diag(1, zeta, zeta^2)
  static HeisenbergElement scalar(const EisensteinInt& unit_cube_root);

  const EMatrix& matrix() const { return m_; }
  HeisenbergElement operator*(const HeisenbergElement& o) const;
  // Inverse via the adjugate (determinant 1).
  HeisenbergElement inverse() const;
  bool operator==(const HeisenbergElement& o) const { return m_ == o.m_; }
  bool operator<(const HeisenbergElement& o) const;
  bool is_scalar() const;

  cubic::Mat3 to_complex() const;
  std::string to_string() const;

 private:
  EMatrix m_;
};

EisensteinInt determinant(const EMatrix& m);
EMatrix multiply(const EMatrix& x, const EMatrix& y);

// x y x^-1 y^-1.
HeisenbergElement commutator(const HeisenbergElement& x, const HeisenbergElement& y);

// Closure of {A, B} under multiplication, sorted.
std::vector<HeisenbergElement> generate_group();
// Elements commuting with both generators.
std::vector<HeisenbergElement> center();
// Order of the image in PGL3 (elements modulo scalars).
std::size_t projective_order(const std::vector<HeisenbergElement>& group);

// g . P = g P in homogeneous coordinates. P must lie on the Fermat cubic within tol.
cubic::ProjPoint act_on_curve(const HeisenbergElement& g, const cubic::ProjPoint& P, double tol = 1e-9);

struct TranslationReport {
  cubic::ProjPoint translation;  // g.P - P at the first sample
  double max_deviation = 0.0;    // over samples, Fubini-Study
  bool three_torsion = false;
};
// Measures g.P - P under the group law of ctx over the given points.
TranslationReport translation_report(const elliptic::EllipticContext& ctx, const HeisenbergElement& g,
                                     const std::vector<cubic::ProjPoint>& samples);

}  // namespace multisect::heisenberg
