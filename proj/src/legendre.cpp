#include "multisect/legendre.hpp"

#include <algorithm>
#include <cmath>

#include "multisect/elliptic.hpp"
#include "multisect/errors.hpp"

namespace multisect::legendre {

namespace {

constexpr double kSingular = 1e-12;

// Points of the Legendre curve for a few x-values, with y from the square root.
std::vector<ProjPoint> legendre_samples(Complex t) {
  std::vector<ProjPoint> pts;
  for (const Complex x : {Complex(0.3, 0.7), Complex(-1.2, 0.4), Complex(2.5, -1.1), Complex(0.05, -0.3)}) {
    const Complex y = std::sqrt(x * (x - 1.0) * (x - t));
    pts.emplace_back(x, y, 1.0);
  }
  return pts;
}

}  // namespace

LegendreCurve::LegendreCurve(Complex t) : t_(t) {
  if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) throw InputError("t must be finite");
  if (std::abs(t) < kSingular || std::abs(t - 1.0) < kSingular)
    throw InputError("Legendre parameter t must avoid 0 and 1");
}

CubicForm LegendreCurve::form() const {
  // y^2 z - x^3 + (1 + t) x^2 z - t x z^2
  return CubicForm::from_terms({{{0, 2, 1}, 1.0}, {{3, 0, 0}, -1.0}, {{2, 0, 1}, 1.0 + t_}, {{1, 0, 2}, -t_}});
}

TwoTorsionReport two_torsion_sections(Complex t) {
  const LegendreCurve L(t);
  const CubicForm F = L.form();
  TwoTorsionReport r{{ProjPoint(0.0, 0.0, 1.0), ProjPoint(1.0, 0.0, 1.0), ProjPoint(t, 0.0, 1.0)}};
  const elliptic::EllipticContext ctx(F, LegendreCurve::identity());
  r.all_two_torsion = true;
  for (const auto& P : r.points) {
    r.max_curve_residual = std::max(r.max_curve_residual, cubic::curve_residual(F, P));
    r.all_two_torsion = r.all_two_torsion && !ctx.is_identity(P) && ctx.is_identity(elliptic::ec_mul(ctx, 2, P));
  }

  // With y = 0 and z = 1 the form is -(x^3 - (1 + t) x^2 + t x), which must be -x(x - 1)(x - t).
  const CPoly cubic_part{-F.coefficient({0, 0, 3}), -F.coefficient({1, 0, 2}), -F.coefficient({2, 0, 1}),
                         -F.coefficient({3, 0, 0})};
  const CPoly expected = poly_mul(poly_mul(CPoly{0.0, 1.0}, CPoly{-1.0, 1.0}), CPoly{-t, 1.0});
  for (std::size_t i = 0; i < 4; ++i)
    r.factorization_residual = std::max(r.factorization_residual, std::abs(cubic_part[i] - expected[i]));

  std::vector<ProjPoint> listed{LegendreCurve::identity()};
  listed.insert(listed.end(), r.points.begin(), r.points.end());
  r.exhaustive = r.factorization_residual < 1e-12 &&
                 elliptic::same_point_sets(elliptic::torsion_points(ctx, 2), listed, ctx.tolerances().identity);
  return r;
}

std::array<Complex, 6> cross_ratio_orbit(Complex t) {
  return {t, 1.0 / t, 1.0 - t, 1.0 / (1.0 - t), t / (t - 1.0), (t - 1.0) / t};
}

std::vector<LegendreNormalization> to_legendre(const CubicForm& F, double tol) {
  const auto fl = cubic::flexes(F);
  const auto W = elliptic::weierstrass_transform(F, fl[0]);
  auto e = companion_roots(CPoly{W.B, W.A, 0.0, 1.0});
  for (auto& r : e) r = newton_polish(CPoly{W.B, W.A, 0.0, 1.0}, r);
  std::array<int, 3> order{0, 1, 2};
  const CubicForm Fn = F.normalized();
  std::vector<LegendreNormalization> out;
  do {
    const Complex e1 = e[order[0]], e2 = e[order[1]], e3 = e[order[2]];
    const Complex d = e2 - e1;
    // x = d X + e1 Z, y = d^(3/2) Y, z = Z turns y^2 = (x-e1)(x-e2)(x-e3) into Legendre form.
    Mat3 P = Mat3::Zero();
    P(0, 0) = d;
    P(0, 2) = e1;
    P(1, 1) = std::pow(d, 1.5);
    P(2, 2) = 1.0;
    LegendreNormalization n{(e3 - e1) / d, W.to_source * P};
    const LegendreCurve L(n.t);
    if (L.form().proportionality_residual(Fn.compose(n.to_source)) > tol)
      throw NumericalError("Legendre normalization failed for t = " + std::to_string(n.t.real()) + "+" +
                           std::to_string(n.t.imag()) + "i");
    for (const auto& p : legendre_samples(n.t))
      n.residual = std::max(n.residual, cubic::curve_residual(F, ProjPoint(n.to_source * p.coords())));
    if (!(n.residual < tol)) throw NumericalError("Legendre normalization round trip exceeds tolerance");
    out.push_back(n);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

}  // namespace multisect::legendre
