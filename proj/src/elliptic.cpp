#include "multisect/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "multisect/errors.hpp"
#include "multisect/modgroup.hpp"

namespace multisect::elliptic {

using cubic::fs_distance;
using cubic::third_intersection;

EllipticContext::EllipticContext(const CubicForm& curve, const ProjPoint& identity, Tolerances tol)
    : curve_(curve.normalized()), identity_(identity), tol_(tol) {
  const Vec3& o = identity_.coords();
  const double scale = std::pow(o.norm(), 3);
  if (std::abs(curve_(o)) > 1e-8 * scale) throw InputError("EllipticContext: identity is not on the curve");
  if (std::abs(cubic::hessian(curve_).normalized()(o)) > 1e-8 * scale)
    throw InputError("EllipticContext: identity is not a flex");
}

void EllipticContext::require_on_curve(const ProjPoint& P) const {
  const double r = cubic::curve_residual(curve_, P);
  if (r > tol_.on_curve) {
    std::ostringstream os;
    os << "point off the curve (residual " << r << ")";
    throw InputError(os.str());
  }
}

bool EllipticContext::is_identity(const ProjPoint& P) const { return fs_distance(P, identity_) < tol_.identity; }

ProjPoint ec_add(const EllipticContext& ctx, const ProjPoint& P, const ProjPoint& Q) {
  ctx.require_on_curve(P);
  ctx.require_on_curve(Q);
  const double s = ctx.tolerances().same_point;
  const ProjPoint R = third_intersection(ctx.curve(), P, Q, s);
  return third_intersection(ctx.curve(), ctx.identity(), R, s);
}

ProjPoint ec_neg(const EllipticContext& ctx, const ProjPoint& P) {
  ctx.require_on_curve(P);
  return third_intersection(ctx.curve(), P, ctx.identity(), ctx.tolerances().same_point);
}

ProjPoint ec_mul(const EllipticContext& ctx, long n, const ProjPoint& P) {
  if (n < 0) return ec_mul(ctx, -n, ec_neg(ctx, P));
  ProjPoint result = ctx.identity();
  ProjPoint base = P;
  while (n > 0) {
    if (n & 1L) result = ec_add(ctx, result, base);
    n >>= 1;
    if (n > 0) base = ec_add(ctx, base, base);
  }
  return result;
}

bool sum_is_identity(const EllipticContext& ctx, const std::vector<ProjPoint>& points) {
  ProjPoint acc = ctx.identity();
  for (const auto& p : points) acc = ec_add(ctx, acc, p);
  return ctx.is_identity(acc);
}

CubicForm WeierstrassModel::form() const {
  return CubicForm::from_terms({{{0, 2, 1}, 1.0}, {{3, 0, 0}, -1.0}, {{1, 0, 2}, -A}, {{0, 0, 3}, -B}});
}

WeierstrassModel weierstrass_transform(const CubicForm& F, const ProjPoint& O) {
  const CubicForm Fn = F.normalized();
  const Vec3 o = O.coords() / O.coords().norm();
  if (std::abs(Fn(o)) > 1e-8 || std::abs(cubic::hessian(Fn).normalized()(o)) > 1e-8)
    throw InputError("weierstrass_transform: base point is not a flex");
  const Vec3 g = Fn.gradient(o);
  if (g.norm() < 1e-8) throw NumericalError("weierstrass_transform: singular base point");
  const Vec3 oc = o.conjugate();
  Vec3 d(g(1) * oc(2) - g(2) * oc(1), g(2) * oc(0) - g(0) * oc(2), g(0) * oc(1) - g(1) * oc(0));
  d /= d.norm();
  Mat3 M;
  M.col(0) = d;
  M.col(1) = o;
  M.col(2) = g.conjugate() / g.norm();
  if (std::abs(M.determinant()) < 1e-8) throw NumericalError("weierstrass_transform: degenerate tangent frame");

  const CubicForm G = Fn.compose(M);
  const Complex c = G.coefficient({3, 0, 0});
  const double tiny = 1e-9;
  if (std::abs(G.coefficient({2, 1, 0})) > tiny || std::abs(G.coefficient({1, 2, 0})) > tiny ||
      std::abs(G.coefficient({0, 3, 0})) > tiny)
    throw NumericalError("weierstrass_transform: tangent line is not an inflectional tangent");
  const Complex dd = G.coefficient({0, 2, 1});
  if (std::abs(c) < 1e-8 || std::abs(dd) < 1e-8) throw NumericalError("weierstrass_transform: degenerate normal form");
  const Complex e = G.coefficient({1, 1, 1}), f = G.coefficient({0, 1, 2});
  const Complex a_ = G.coefficient({2, 0, 1}), b_ = G.coefficient({1, 0, 2}), g_ = G.coefficient({0, 0, 3});

  const Complex kappa = std::pow(-dd / c, 1.0 / 3.0);
  const Complex a1 = e * kappa / dd, a3 = f / dd;
  const Complex a2 = -a_ * kappa * kappa / dd, a4 = -b_ * kappa / dd, a6 = -g_ / dd;
  const Complex b2 = a1 * a1 + 4.0 * a2, b4 = 2.0 * a4 + a1 * a3, b6 = a3 * a3 + 4.0 * a6;
  Complex A = b4 / 2.0 - b2 * b2 / 48.0;
  Complex B = b6 / 4.0 - b2 * b4 / 24.0 + b2 * b2 * b2 / 864.0;
  const double u = std::max(std::pow(std::abs(A), 0.25), std::pow(std::abs(B), 1.0 / 6.0));
  if (!(u > 0.0)) throw NumericalError("weierstrass_transform: vanishing invariants");
  A /= std::pow(u, 4);
  B /= std::pow(u, 6);

  Mat3 L = Mat3::Identity();
  L(0, 2) = -b2 / 12.0;
  L(1, 0) = -a1 / 2.0;
  L(1, 2) = a1 * b2 / 24.0 - a3 / 2.0;
  Mat3 K = Mat3::Identity();
  K(0, 0) = kappa;
  Mat3 Su = Mat3::Identity();
  Su(0, 0) = u * u;
  Su(1, 1) = u * u * u;

  WeierstrassModel W;
  W.A = A;
  W.B = B;
  W.to_source = M * K * L * Su;
  W.from_source = W.to_source.inverse();
  if (std::abs(W.discriminant()) < 1e-10) throw NumericalError("weierstrass_transform: singular model");
  const double resid = Fn.compose(W.to_source).proportionality_residual(W.form());
  if (resid > 1e-9) {
    std::ostringstream os;
    os << "weierstrass_transform: model does not match the source curve (residual " << resid << ")";
    throw NumericalError(os.str());
  }
  return W;
}

namespace {

template <class T>
struct Dual {
  T v, d;
};
template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}
template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
  return {a.v - b.v, a.d - b.d};
}

// f_0 .. f_n through the doubling recurrences; Elem supports + - * and scalar construction.
template <class Elem, class Make>
std::vector<Elem> division_sequence(int n, const Elem& x, const Make& make, Complex A, Complex B) {
  auto c = [&](Complex s) { return make(s); };
  const Elem x2 = x * x, x3 = x2 * x, x4 = x2 * x2, x6 = x3 * x3;
  const Elem F4 = c(4.0) * (x3 + c(A) * x + c(B));
  const Elem F4sq = F4 * F4;
  std::vector<Elem> f;
  f.push_back(c(0.0));
  f.push_back(c(1.0));
  f.push_back(c(1.0));
  f.push_back(c(3.0) * x4 + c(6.0 * A) * x2 + c(12.0 * B) * x - c(A * A));
  f.push_back(c(2.0) * (x6 + c(5.0 * A) * x4 + c(20.0 * B) * x3 - c(5.0 * A * A) * x2 - c(4.0 * A * B) * x -
                        c(8.0 * B * B) - c(A * A * A)));
  for (int k = 5; k <= n; ++k) {
    const auto m = static_cast<std::size_t>(k / 2);
    if (k % 2) {
      const Elem t1 = f[m + 2] * f[m] * f[m] * f[m];
      const Elem t2 = f[m - 1] * f[m + 1] * f[m + 1] * f[m + 1];
      f.push_back(m % 2 == 0 ? F4sq * t1 - t2 : t1 - F4sq * t2);
    } else {
      f.push_back(f[m] * (f[m + 2] * f[m - 1] * f[m - 1] - f[m - 2] * f[m + 1] * f[m + 1]));
    }
  }
  f.resize(static_cast<std::size_t>(n) + 1);
  return f;
}

struct PolyElem {
  CPoly p;
};
PolyElem operator*(const PolyElem& a, const PolyElem& b) { return {poly_mul(a.p, b.p)}; }
PolyElem operator+(const PolyElem& a, const PolyElem& b) { return {poly_add(a.p, b.p)}; }
PolyElem operator-(const PolyElem& a, const PolyElem& b) { return {poly_add(a.p, poly_scale(b.p, -1.0))}; }

using LDual = Dual<LComplex>;
LDual operator+(const LDual& a, const LDual& b) { return {a.v + b.v, a.d + b.d}; }

LComplex lc(Complex z) { return LComplex(z.real(), z.imag()); }

}  // namespace

CPoly division_polynomial(Complex A, Complex B, int n) {
  if (n < 0) throw InputError("division_polynomial: negative index");
  auto make = [](Complex s) { return PolyElem{CPoly{s}}; };
  auto f = division_sequence<PolyElem>(std::max(n, 4), PolyElem{CPoly{0.0, 1.0}}, make, A, B);
  return poly_trim(f[static_cast<std::size_t>(n)].p);
}

LComplex division_newton_ratio(Complex A, Complex B, int n, LComplex x) {
  auto make = [](Complex s) { return LDual{lc(s), LComplex(0.0L)}; };
  auto f = division_sequence<LDual>(std::max(n, 4), LDual{x, LComplex(1.0L)}, make, A, B);
  const LDual& v = f[static_cast<std::size_t>(n)];
  return v.v / v.d;
}

namespace {

std::vector<Complex> division_roots(Complex A, Complex B, int N) {
  const CPoly p = division_polynomial(A, B, N);
  const int deg = poly_degree(p);
  if (deg <= 0) return {};
  NewtonRatio ratio = [&](LComplex x) { return division_newton_ratio(A, B, N, x); };
  std::vector<Complex> guesses = companion_roots(p);
  AberthResult res = aberth(ratio, guesses, 500, 1e-15);
  if (!res.converged) {
    // Fall back to a circle of starting points.
    double radius = 1.0;
    for (const auto& g : guesses) radius = std::max(radius, std::abs(g));
    for (int i = 0; i < deg; ++i) guesses[static_cast<std::size_t>(i)] = std::polar(radius, 2.0 * M_PI * (i + 0.25) / deg);
    res = aberth(ratio, guesses, 5000, 1e-15);
  }
  if (!res.converged) {
    std::ostringstream os;
    os << "torsion_points: root refinement did not converge for division polynomial f_" << N << " (degree " << deg
       << ", A = " << A << ", B = " << B << ", last correction " << res.max_correction << ")";
    throw NumericalError(os.str());
  }
  return res.roots;
}

}  // namespace

bool same_point_sets(const std::vector<ProjPoint>& a, const std::vector<ProjPoint>& b, double radius) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const auto& p : a) {
    std::size_t best = b.size();
    double bd = radius;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = fs_distance(p, b[j]);
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    if (best == b.size() || used[best]) return false;
    used[best] = 1;
  }
  return true;
}

std::vector<ProjPoint> torsion_points(const EllipticContext& ctx, int N, const TorsionOptions& opts) {
  if (N < 1) throw InputError("torsion_points: N must be positive");
  if (N > opts.n_max) throw InputError("torsion_points: N exceeds N_max = " + std::to_string(opts.n_max));
  std::vector<ProjPoint> out{ctx.identity()};
  if (N == 1) return out;
  const WeierstrassModel W = weierstrass_transform(ctx.curve(), ctx.identity());
  std::vector<Vec3> model_points;
  for (const Complex& x : division_roots(W.A, W.B, N)) {
    const Complex y = std::sqrt(x * x * x + W.A * x + W.B);
    model_points.emplace_back(x, y, 1.0);
    model_points.emplace_back(x, -y, 1.0);
  }
  if (N % 2 == 0) {
    const CPoly cubic_x{W.B, W.A, 0.0, 1.0};
    for (Complex x : companion_roots(cubic_x)) model_points.emplace_back(newton_polish(cubic_x, x), 0.0, 1.0);
  }
  for (const auto& v : model_points) out.emplace_back(W.to_source * v);

  if (out.size() != static_cast<std::size_t>(N) * static_cast<std::size_t>(N))
    throw NumericalError("torsion_points: expected " + std::to_string(N * N) + " points, found " + std::to_string(out.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    ctx.require_on_curve(out[i]);
    if (!ctx.is_identity(ec_mul(ctx, N, out[i])))
      throw NumericalError("torsion_points: a computed point is not " + std::to_string(N) + "-torsion");
    for (std::size_t j = 0; j < i; ++j)
      if (fs_distance(out[i], out[j]) < ctx.tolerances().identity)
        throw NumericalError("torsion_points: computed points are not distinct");
  }
  cubic::sort_points(out);
  return out;
}

std::vector<ProjPoint> type_points(const CubicForm& F, int m, const TypePointOptions& opts) {
  if (m < 1) throw InputError("type_points: m must be positive");
  if (m > opts.m_max) throw InputError("type_points: m exceeds m_max = " + std::to_string(opts.m_max));
  const auto fl = cubic::flexes(F);
  if (opts.identity_flex < 0 || opts.identity_flex >= 9) throw InputError("type_points: identity flex index out of range");
  const EllipticContext ctx(F, fl[static_cast<std::size_t>(opts.identity_flex)], opts.tol);
  TorsionOptions topts;
  topts.n_max = 3 * opts.m_max;
  std::vector<ProjPoint> out;
  for (const auto& P : torsion_points(ctx, 3 * m, topts)) {
    bool lower = false;
    for (int k = 1; k < m && !lower; ++k) lower = ctx.is_identity(ec_mul(ctx, 3 * k, P));
    if (!lower) out.push_back(P);
  }
  const std::int64_t j2 = modgroup::jordan_totient(m);
  if (static_cast<std::int64_t>(out.size()) != 9 * j2)
    throw NumericalError("type_points: found " + std::to_string(out.size()) + " points of type " + std::to_string(3 * m) +
                         ", expected " + std::to_string(9 * j2));
  return out;
}

}  // namespace multisect::elliptic
