#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "multisect/polyroots.hpp"

// Plane cubic geometry over the complex numbers: forms, projective points,
// Hessians, flexes, the Hesse pencil and its configuration, chords and tangents.
namespace multisect::cubic {

using Vec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3cd;
using Exponent = std::array<int, 3>;

// Homogeneous cubic in x, y, z. Coefficients are stored in the fixed monomial order
// x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3.
class CubicForm {
 public:
  static const std::array<Exponent, 10>& monomials();
  static std::size_t index_of(const Exponent& e);

  // Throws InputError for the zero form or non-finite coefficients.
  explicit CubicForm(const std::array<Complex, 10>& coefficients);
  static CubicForm from_terms(const std::vector<std::pair<Exponent, Complex>>& terms);
  static CubicForm fermat();

  const std::array<Complex, 10>& coefficients() const { return c_; }
  Complex coefficient(const Exponent& e) const { return c_[index_of(e)]; }

  Complex operator()(const Vec3& v) const;
  Vec3 gradient(const Vec3& v) const;
  Mat3 second_derivatives(const Vec3& v) const;

  double max_coefficient() const;
  // Scaled so the largest coefficient modulus is 1.
  CubicForm normalized() const;
  CubicForm scaled(Complex s) const;
  // v -> F(M v).
  CubicForm compose(const Mat3& M) const;
  // Relative distance to the closest multiple c * other, zero iff proportional.
  double proportionality_residual(const CubicForm& other) const;

  std::string to_string() const;

 private:
  std::array<Complex, 10> c_{};
};

// Point of CP^2. Coordinates are scaled so that the coordinate of largest modulus is 1;
// moduli within a relative 1e-9 of the maximum count as ties, resolved by lowest index.
class ProjPoint {
 public:
  ProjPoint(Complex x, Complex y, Complex z);
  explicit ProjPoint(const Vec3& v);

  const Vec3& coords() const { return v_; }
  Complex operator[](int i) const { return v_(i); }

  std::string to_string() const;

 private:
  Vec3 v_;
};

// Fubini-Study angle in [0, pi/2].
double fs_distance(const ProjPoint& p, const ProjPoint& q);
double fs_distance(const Vec3& p, const Vec3& q);
// Lexicographic order on normalized coordinates, comparing (re, im) with a 1e-9 slack.
bool lex_less(const ProjPoint& p, const ProjPoint& q);
void sort_points(std::vector<ProjPoint>& pts);

// |F(P)| for the normalized form at the normalized point.
double curve_residual(const CubicForm& F, const ProjPoint& P);

// Determinant of the matrix of second partials.
CubicForm hessian(const CubicForm& F);

// The 9 common zeros of F and its Hessian, refined by Newton's method and sorted.
// Throws SmoothnessError if F is singular or the intersection is not 9 simple points.
std::vector<ProjPoint> flexes(const CubicForm& F, double tol = 1e-8);
bool is_smooth(const CubicForm& F);

struct HessePencilMember {
  CubicForm form;
  bool smooth = true;
};
// x^3 + y^3 + z^3 - 3 lambda xyz; smooth iff lambda^3 != 1.
HessePencilMember hesse_pencil(Complex lambda);
bool hesse_lambda_smooth(Complex lambda, double tol = 1e-12);

struct HesseConfiguration {
  std::vector<std::array<int, 3>> lines;        // point indices, ascending
  std::vector<std::vector<int>> lines_through;  // per point, indices into lines
  double max_collinearity_residual = 0.0;       // over the accepted lines
  double min_noncollinear_residual = 0.0;       // over rejected triples
};
// Throws ConfigurationError unless exactly 12 lines with 4 through each point.
HesseConfiguration hesse_configuration(const std::vector<ProjPoint>& pts, double tol = 1e-8);
// |det(p, q, r)| / (|p| |q| |r|).
double collinearity_residual(const Vec3& p, const Vec3& q, const Vec3& r);

// Third point of the line PQ on F (tangent line when P and Q coincide within
// same_point_tol). The result is refined along the line.
ProjPoint third_intersection(const CubicForm& F, const ProjPoint& P, const ProjPoint& Q,
                             double same_point_tol = 1e-8);

}  // namespace multisect::cubic
