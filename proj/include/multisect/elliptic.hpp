#pragma once

#include <vector>

#include "multisect/cubic.hpp"

// Chord-tangent group law on a smooth plane cubic with a flex as identity,
// Weierstrass normal form, division polynomials, torsion points and points of type 3m.
namespace multisect::elliptic {

using cubic::CubicForm;
using cubic::Mat3;
using cubic::ProjPoint;
using cubic::Vec3;

struct Tolerances {
  double on_curve = 1e-9;      // |F(P)| of normalized form at normalized point
  double same_point = 1e-8;    // chord vs tangent switch (Fubini-Study angle)
  double identity = 1e-7;      // P == O test and set matching radius
};

class EllipticContext {
 public:
  // Throws InputError unless identity lies on the curve and on its Hessian.
  EllipticContext(const CubicForm& curve, const ProjPoint& identity, Tolerances tol = {});

  const CubicForm& curve() const { return curve_; }
  const ProjPoint& identity() const { return identity_; }
  const Tolerances& tolerances() const { return tol_; }

  // Throws InputError when P is off the curve beyond tolerance.
  void require_on_curve(const ProjPoint& P) const;
  bool is_identity(const ProjPoint& P) const;

 private:
  CubicForm curve_;
  ProjPoint identity_;
  Tolerances tol_;
};

ProjPoint ec_add(const EllipticContext& ctx, const ProjPoint& P, const ProjPoint& Q);
ProjPoint ec_neg(const EllipticContext& ctx, const ProjPoint& P);
ProjPoint ec_mul(const EllipticContext& ctx, long n, const ProjPoint& P);
bool sum_is_identity(const EllipticContext& ctx, const std::vector<ProjPoint>& points);

// y^2 z = x^3 + A x z^2 + B z^3, with source = to_source * model coordinates.
struct WeierstrassModel {
  Complex A, B;
  Mat3 to_source;
  Mat3 from_source;

  CubicForm form() const;
  Complex discriminant() const { return 4.0 * A * A * A + 27.0 * B * B; }
  ProjPoint to_model(const ProjPoint& P) const { return ProjPoint(from_source * P.coords()); }
  ProjPoint from_model(const ProjPoint& P) const { return ProjPoint(to_source * P.coords()); }
};

// Sends the flex O to (0:1:0) with tangent z = 0, then completes the square and the cube.
// The model is rescaled so that max(|A|^(1/4), |B|^(1/6)) = 1.
WeierstrassModel weierstrass_transform(const CubicForm& F, const ProjPoint& O);

// Division polynomials in x: psi_n = f_n for odd n and 2y f_n for even n.
CPoly division_polynomial(Complex A, Complex B, int n);
// f_n(x) / f_n'(x), evaluated through the recurrence in extended precision.
LComplex division_newton_ratio(Complex A, Complex B, int n, LComplex x);

struct TorsionOptions {
  int n_max = 18;
};

// All N^2 points with N P = O, sorted.
std::vector<ProjPoint> torsion_points(const EllipticContext& ctx, int N, const TorsionOptions& opts = {});

// 3m-torsion points that are not 3k-torsion for k < m, with a flex as identity.
struct TypePointOptions {
  int m_max = 6;
  Tolerances tol;
  int identity_flex = 0;  // index into the sorted flexes
};
std::vector<ProjPoint> type_points(const CubicForm& F, int m, const TypePointOptions& opts = {});

// Points of a list matched one-to-one within radius.
bool same_point_sets(const std::vector<ProjPoint>& a, const std::vector<ProjPoint>& b, double radius);

}  // namespace multisect::elliptic
