#include <cmath>

#include "doctest.h"
#include "multisect/elliptic.hpp"
#include "multisect/errors.hpp"
#include "multisect/verify/sampling.hpp"

using namespace multisect;
using namespace multisect::cubic;
using namespace multisect::elliptic;

namespace {

EllipticContext fermat_context() {
  const CubicForm F = CubicForm::fermat();
  return EllipticContext(F, flexes(F)[0]);
}

}  // namespace

TEST_CASE("context validation") {
  const CubicForm F = CubicForm::fermat();
  CHECK_THROWS_AS(EllipticContext(F, ProjPoint(1.0, 1.0, 1.0)), InputError);
  verify::Sampler s(1);
  CHECK_THROWS_AS(EllipticContext(F, s.curve_point(F)), InputError);
  auto ctx = fermat_context();
  CHECK_THROWS_AS(ec_add(ctx, ProjPoint(1.0, 2.0, 3.0), ctx.identity()), InputError);
}

TEST_CASE("group law identities") {
  auto ctx = fermat_context();
  verify::Sampler s(17);
  const ProjPoint& O = ctx.identity();
  for (int i = 0; i < 20; ++i) {
    ProjPoint P = s.curve_point(ctx.curve());
    CHECK(fs_distance(ec_add(ctx, P, O), P) < 1e-10);
    CHECK(ctx.is_identity(ec_add(ctx, P, ec_neg(ctx, P))));
    CHECK(fs_distance(ec_mul(ctx, 2, P), ec_add(ctx, P, P)) < 1e-10);
    CHECK(fs_distance(ec_mul(ctx, -3, P), ec_neg(ctx, ec_mul(ctx, 3, P))) < 1e-9);
  }
  for (const auto& f : flexes(ctx.curve())) CHECK(ctx.is_identity(ec_mul(ctx, 3, f)));
}

TEST_CASE("associativity and commutativity on several curves") {
  verify::Sampler s(5);
  std::vector<CubicForm> curves{CubicForm::fermat(), hesse_pencil(s.hesse_lambda()).form, s.cubic_form()};
  for (const auto& F : curves) {
    EllipticContext ctx(F, flexes(F)[3]);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      ProjPoint P = s.curve_point(F), Q = s.curve_point(F), R = s.curve_point(F);
      worst = std::max(worst, fs_distance(ec_add(ctx, ec_add(ctx, P, Q), R), ec_add(ctx, P, ec_add(ctx, Q, R))));
      worst = std::max(worst, fs_distance(ec_add(ctx, P, Q), ec_add(ctx, Q, P)));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("weierstrass model") {
  verify::Sampler s(8);
  for (const CubicForm& F : {CubicForm::fermat(), s.cubic_form(), hesse_pencil(Complex(0.3, 1.1)).form}) {
    const auto fl = flexes(F);
    const auto W = weierstrass_transform(F, fl[0]);
    CHECK(std::abs(W.discriminant()) > 1e-6);
    CHECK(F.normalized().compose(W.to_source).proportionality_residual(W.form()) < 1e-10);
    CHECK(fs_distance(W.to_model(fl[0]), ProjPoint(0.0, 1.0, 0.0)) < 1e-12);
    const CubicForm model = W.form();
    const CubicForm Hm = hessian(model).normalized();
    for (const auto& f : fl) {
      const ProjPoint g = W.to_model(f);
      CHECK(curve_residual(model, g) < 1e-9);
      CHECK(std::abs(Hm(g.coords())) < 1e-8);
    }
    EllipticContext src(F, fl[0]), mod(model, ProjPoint(0.0, 1.0, 0.0));
    for (int i = 0; i < 10; ++i) {
      ProjPoint P = s.curve_point(F), Q = s.curve_point(F);
      ProjPoint viaModel = W.from_model(ec_add(mod, W.to_model(P), W.to_model(Q)));
      CHECK(fs_distance(viaModel, ec_add(src, P, Q)) < 1e-8);
    }
    CHECK_THROWS_AS(weierstrass_transform(F, s.curve_point(F)), InputError);
  }
}

TEST_CASE("division polynomials") {
  const Complex A(0.3, -0.2), B(-0.5, 0.1);
  CHECK(poly_degree(division_polynomial(A, B, 3)) == 4);
  CHECK(poly_degree(division_polynomial(A, B, 4)) == 6);
  for (int n = 5; n <= 12; ++n) {
    const int expect = n % 2 ? (n * n - 1) / 2 : (n * n - 4) / 2;
    CHECK(poly_degree(division_polynomial(A, B, n)) == expect);
  }
  // Recurrence evaluation agrees with the expanded polynomial.
  const CPoly p = division_polynomial(A, B, 7);
  const Complex x(0.4, 0.7);
  const LComplex r = division_newton_ratio(A, B, 7, LComplex(0.4L, 0.7L));
  const Complex expected = poly_eval(p, x) / poly_eval(poly_derivative(p), x);
  CHECK(std::abs(Complex(static_cast<double>(r.real()), static_cast<double>(r.imag())) - expected) < 1e-10 * std::abs(expected));
}

TEST_CASE("torsion points") {
  auto ctx = fermat_context();
  CHECK(torsion_points(ctx, 1).size() == 1);
  auto t3 = torsion_points(ctx, 3);
  CHECK(same_point_sets(t3, flexes(ctx.curve()), 1e-7));
  CHECK(torsion_points(ctx, 2).size() == 4);
  CHECK_THROWS_AS(torsion_points(ctx, 19), InputError);
  CHECK_THROWS_AS(torsion_points(ctx, 0), InputError);
  auto t12 = torsion_points(ctx, 12);
  CHECK(t12.size() == 144);
  verify::Sampler s(3);
  for (int i = 0; i < 30; ++i) {
    const ProjPoint sum = ec_add(ctx, t12[s.below(t12.size())], t12[s.below(t12.size())]);
    double best = 1.0;
    for (const auto& q : t12) best = std::min(best, fs_distance(sum, q));
    CHECK(best < 1e-8);
  }
}

TEST_CASE("torsion points on a random cubic up to N = 18") {
  verify::Sampler s(12);
  const CubicForm F = s.cubic_form();
  EllipticContext ctx(F, flexes(F)[5]);
  for (int N : {5, 8, 16, 18}) CHECK(torsion_points(ctx, N).size() == static_cast<std::size_t>(N * N));
}

TEST_CASE("points of type 3m") {
  const CubicForm F = CubicForm::fermat();
  const auto fl = flexes(F);
  auto t1 = type_points(F, 1);
  CHECK(same_point_sets(t1, fl, 1e-7));
  CHECK(type_points(F, 2).size() == 27);
  CHECK(type_points(F, 3).size() == 72);
  CHECK(type_points(F, 4).size() == 108);
  CHECK_THROWS_AS(type_points(F, 7), InputError);
  TypePointOptions other;
  other.identity_flex = 7;
  CHECK(same_point_sets(type_points(F, 2), type_points(F, 2, other), 1e-7));
  CHECK(same_point_sets(type_points(F, 4), type_points(F, 4, other), 1e-7));
}

TEST_CASE("type points partition the torsion") {
  verify::Sampler s(21);
  const CubicForm F = hesse_pencil(s.hesse_lambda()).form;
  const auto fl = flexes(F);
  EllipticContext ctx(F, fl[0]);
  for (int M : {1, 2, 4}) {
    std::vector<ProjPoint> uni;
    for (int m = 1; m <= M; ++m) {
      if (M % m) continue;
      auto t = type_points(F, m);
      uni.insert(uni.end(), t.begin(), t.end());
    }
    CHECK(same_point_sets(uni, torsion_points(ctx, 3 * M), 1e-7));
  }
}

TEST_CASE("sum is identity") {
  auto ctx = fermat_context();
  const auto fl = flexes(ctx.curve());
  auto cfg = hesse_configuration(fl);
  for (const auto& line : cfg.lines)
    CHECK(sum_is_identity(ctx, {fl[static_cast<std::size_t>(line[0])], fl[static_cast<std::size_t>(line[1])],
                                fl[static_cast<std::size_t>(line[2])]}));
  const ProjPoint& O = ctx.identity();
  CHECK(sum_is_identity(ctx, {O, O, O}));
  verify::Sampler s(4);
  ProjPoint P = s.curve_point(ctx.curve()), Q = s.curve_point(ctx.curve());
  CHECK_FALSE(sum_is_identity(ctx, {P, ec_neg(ctx, P), Q}));
}
