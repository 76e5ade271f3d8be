#include <set>

#include "doctest.h"
#include "multisect/errors.hpp"
#include "multisect/heisenberg.hpp"
#include "multisect/verify/sampling.hpp"

using namespace multisect;
using namespace multisect::heisenberg;

TEST_CASE("eisenstein arithmetic") {
  const EisensteinInt z = EisensteinInt::zeta();
  CHECK(z * z == EisensteinInt(-1, -1));
  CHECK(z * z * z == EisensteinInt(1));
  CHECK(z * z.conj() == EisensteinInt(z.norm(), 0));
  const EisensteinInt x(3, -7), y(-2, 5);
  CHECK(std::abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-12);
  CHECK((x * y).norm() == x.norm() * y.norm());
  CHECK(z.to_string() == "zeta");
  CHECK(EisensteinInt(2, -3).to_string() == "2-3*zeta");
}

TEST_CASE("generators") {
  const auto A = HeisenbergElement::A(), B = HeisenbergElement::B();
  const HeisenbergElement I;
  CHECK(A * A * A == I);
  CHECK(B * B * B == I);
  CHECK_FALSE(A == I);
  CHECK(A * A.inverse() == I);
  CHECK(B.inverse() * B == I);
  const auto zI = HeisenbergElement::scalar(EisensteinInt::zeta());
  CHECK(commutator(B, A) == zI);
  CHECK(commutator(A, B) == zI * zI);
  EMatrix bad;
  bad[0][0] = 2;
  bad[1][1] = 1;
  bad[2][2] = 1;
  CHECK_THROWS_AS(HeisenbergElement{bad}, InputError);
}

TEST_CASE("group of order 27") {
  const auto K = generate_group();
  CHECK(K.size() == 27);
  // Exhaustive group axioms.
  std::set<HeisenbergElement> S(K.begin(), K.end());
  for (const auto& g : K) {
    CHECK(S.count(g.inverse()));
    for (const auto& h : K) CHECK(S.count(g * h));
  }
  for (std::size_t i = 0; i < K.size(); i += 5)
    for (std::size_t j = 0; j < K.size(); j += 3)
      for (std::size_t k = 0; k < K.size(); k += 7) CHECK((K[i] * K[j]) * K[k] == K[i] * (K[j] * K[k]));
  const auto Z = center();
  CHECK(Z.size() == 3);
  for (const auto& z : Z) CHECK(z.is_scalar());
  CHECK(projective_order(K) == 9);
  CHECK(K.size() / Z.size() == 9);
}

TEST_CASE("action on the Fermat cubic") {
  const auto F = cubic::CubicForm::fermat();
  const auto fl = cubic::flexes(F);
  const HeisenbergElement I;
  verify::Sampler s(9);
  const auto P = s.curve_point(F);
  CHECK(cubic::fs_distance(act_on_curve(I, P), P) < 1e-15);
  CHECK_THROWS_AS(act_on_curve(I, cubic::ProjPoint(1.0, 2.0, 3.0)), InputError);

  // A permutes the flexes without fixed points.
  for (const auto& f : fl) {
    const auto g = act_on_curve(HeisenbergElement::A(), f);
    double best = 1.0;
    for (const auto& q : fl) best = std::min(best, cubic::fs_distance(g, q));
    CHECK(best < 1e-12);
    CHECK(cubic::fs_distance(g, f) > 0.1);
  }

  // Orbits of size 9; the center acts trivially.
  const auto K = generate_group();
  std::vector<cubic::ProjPoint> orbit;
  for (const auto& g : K) {
    const auto q = act_on_curve(g, P);
    bool fresh = true;
    for (const auto& o : orbit) fresh = fresh && cubic::fs_distance(o, q) > 1e-9;
    if (fresh) orbit.push_back(q);
  }
  CHECK(orbit.size() == 9);
  for (const auto& z : center()) CHECK(cubic::fs_distance(act_on_curve(z, P), P) < 1e-14);
}

TEST_CASE("generators act as 3-torsion translations") {
  const auto F = cubic::CubicForm::fermat();
  elliptic::EllipticContext ctx(F, cubic::flexes(F)[0]);
  verify::Sampler s(31);
  std::vector<cubic::ProjPoint> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(s.curve_point(F));
  const auto ta = translation_report(ctx, HeisenbergElement::A(), pts);
  const auto tb = translation_report(ctx, HeisenbergElement::B(), pts);
  CHECK(ta.max_deviation < 1e-9);
  CHECK(tb.max_deviation < 1e-9);
  CHECK(ta.three_torsion);
  CHECK(tb.three_torsion);
  // Independence in the 3-torsion: no a tA + b tB = O except a = b = 0 mod 3.
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const auto sum = elliptic::ec_add(ctx, elliptic::ec_mul(ctx, a, ta.translation), elliptic::ec_mul(ctx, b, tb.translation));
      CHECK(ctx.is_identity(sum) == (a == 0 && b == 0));
    }
}
