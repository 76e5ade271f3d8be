#include <cmath>
#include <sstream>

#include "doctest.h"
#include "multisect/errors.hpp"
#include "multisect/heisenberg.hpp"
#include "multisect/monodromy.hpp"

using namespace multisect;
using namespace multisect::monodromy;

namespace {

const double kPi = std::acos(-1.0);

LabeledPointSet fermat_set(PointKind k) { return enumerate(cubic::CubicForm::fermat(), k); }

std::string data_file() { return std::string(MULTISECT_DATA_DIR) + "/hesse_loops_v1.txt"; }

}  // namespace

TEST_CASE("path geometry") {
  const auto seg = PathSegment::arc(2.0, 0.5, 0.0, kPi);
  CHECK(seg.length() == doctest::Approx(0.5 * kPi));
  CHECK(std::abs(seg.end() - Complex(1.5, 0.0)) < 1e-15);
  CHECK(std::abs(seg.reversed().start() - seg.end()) < 1e-15);
  CurvePath p({PathSegment::line(0.0, 0.5), PathSegment::line(0.5, Complex(0.5, 0.5))});
  CHECK(p.length() == doctest::Approx(1.0));
  CHECK(std::abs(p.lambda_at(0.75) - Complex(0.5, 0.25)) < 1e-15);
  CHECK_FALSE(p.is_closed());
  CHECK(std::abs(p.reversed().start() - Complex(0.5, 0.5)) < 1e-15);
  CHECK_THROWS_AS(CurvePath({PathSegment::line(0.0, 0.5), PathSegment::line(0.6, 0.0)}), InputError);
  CHECK_THROWS_AS(CurvePath({PathSegment::line(0.0, 2.0)}), InputError);  // through lambda = 1
  Mat3 g = Mat3::Identity();
  g(0, 0) = 2.0;
  CHECK_THROWS_AS(CurvePath(0.0, g), InputError);
  CHECK_THROWS_AS(CurvePath({PathSegment::line(0.0, -1.0)}, hesse_fourier_matrix()), InputError);
  for (const auto& l : lambda_generators()) {
    CHECK(l.is_closed());
    CHECK(l.curve_at(1.0).proportionality_residual(cubic::CubicForm::fermat()) < 1e-14);
    CHECK(l.singular_clearance() >= 0.3 - 1e-9);
  }
}

TEST_CASE("point kinds") {
  CHECK(PointKind::parse("flexes").type == PointKind::Type::Flexes);
  CHECK(PointKind::parse("torsion:4").parameter == 4);
  CHECK(PointKind::parse("type:2").to_string() == "type:2");
  CHECK_THROWS_AS(PointKind::parse("type:"), InputError);
  CHECK_THROWS_AS(PointKind::parse("type:0"), InputError);
  CHECK_THROWS_AS(PointKind::parse("sextatic"), InputError);
}

TEST_CASE("permutation helpers") {
  const Permutation a{1, 2, 0, 3}, b{0, 1, 3, 2};
  CHECK(compose(a, b) == Permutation{1, 3, 0, 2});
  CHECK(is_identity(compose(a, inverse(a))));
  CHECK(cycle_notation(a) == "(0 1 2)");
  CHECK(cycle_notation({0, 1}) == "()");
  CHECK(orbits({a}, 4).size() == 2);
}

TEST_CASE("trivial loops give the identity") {
  const auto set = fermat_set(PointKind::torsion(2));
  CHECK(is_identity(track(set, CurvePath(0.0)).monodromy.perm));
  const auto base = enumerate(cubic::hesse_pencil(2.1).form, PointKind::type_points(2));
  CurvePath circle({PathSegment::arc(2.0, 0.1, 0.0, 2.0 * kPi)});
  const auto r = track(base, circle);
  CHECK(is_identity(r.monodromy.perm));
  CHECK(r.monodromy.min_margin > 0.6);
  CHECK_THROWS_AS(track(set, circle), InputError);  // set not on the start curve
}

TEST_CASE("lambda loops fix the flexes") {
  const auto set = fermat_set(PointKind::flexes());
  for (const auto& l : lambda_generators()) {
    const auto r = track(set, l);
    CHECK(is_identity(r.monodromy.perm));
    CHECK(r.monodromy.steps >= 64);
  }
}

TEST_CASE("tracking is deterministic and respects inverses and concatenation") {
  const auto loops = lambda_generators();
  for (const auto kind : {PointKind::torsion(2), PointKind::type_points(2)}) {
    const auto set = fermat_set(kind);
    const auto p0 = track(set, loops[0]).monodromy.perm;
    CHECK(track(set, loops[0]).monodromy.perm == p0);
    CHECK(is_identity(compose(p0, track(set, loops[0].reversed()).monodromy.perm)));
    const auto p1 = track(set, loops[1]).monodromy.perm;
    CHECK(track(set, concat(loops[0], loops[1])).monodromy.perm == compose(p0, p1));
  }
}

TEST_CASE("product of the lambda generators is the loop around infinity") {
  const auto loops = lambda_generators();
  const auto path = concat(concat(loops[2], loops[0]), loops[1]);
  for (const auto kind : {PointKind::torsion(2), PointKind::type_points(2)}) {
    const auto set = fermat_set(kind);
    const auto big = track(set, lambda_circle_at_infinity()).monodromy.perm;
    CHECK(track(set, path).monodromy.perm == big);
    CHECK_FALSE(is_identity(big));
  }
}

TEST_CASE("homological images") {
  const auto t2 = fermat_set(PointKind::torsion(2));
  const auto b2 = find_basis(t2);
  Permutation id(t2.points.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  CHECK(homological_image(t2, id, b2[0], b2[1]) == Mat2{{{1, 0}, {0, 1}}});
  CHECK_THROWS_AS(torsion_coordinates(t2, b2[0], b2[0]), InputError);

  std::vector<Mat2> mats;
  for (const auto& l : lambda_generators()) {
    const auto M = homological_image(t2, track(t2, l).monodromy.perm, b2[0], b2[1]);
    CHECK(mat2_det(M, 2) == 1);
    mats.push_back(M);
  }
  CHECK(mat2_closure(mats, 2).size() == 6);

  const auto t3 = fermat_set(PointKind::torsion(3));
  const auto b3 = find_basis(t3);
  for (const auto& l : lambda_generators())
    CHECK(homological_image(t3, track(t3, l).monodromy.perm, b3[0], b3[1]) == Mat2{{{1, 0}, {0, 1}}});

  const auto t4 = fermat_set(PointKind::torsion(4));
  const auto b4 = find_basis(t4);
  const auto M = homological_image(t4, track(t4, lambda_generators()[0]).monodromy.perm, b4[0], b4[1]);
  CHECK(mat2_det(M, 4) == 1);
  CHECK(mat2_closure({Mat2{{{1, 1}, {0, 1}}}}, 4).size() == 4);
}

TEST_CASE("hesse group") {
  const auto r = hesse_group_algebraic();
  CHECK(r.order == 216);
  CHECK(r.transitive);
  CHECK(r.preserves_lines);
  CHECK(r.heisenberg_image_order == 9);
  CHECK(r.heisenberg_image_normal);
  const auto fl = cubic::flexes(cubic::CubicForm::fermat());
  CHECK(is_identity(induced_permutation(heisenberg::HeisenbergElement::scalar(heisenberg::EisensteinInt::zeta()).to_complex(), fl)));
  Mat3 g = Mat3::Identity();
  g(0, 1) = 0.3;
  CHECK_THROWS_AS(induced_permutation(g, fl), ConfigurationError);
}

TEST_CASE("twisted loops match their direct action") {
  for (const auto& l : twisted_generators()) {
    const auto v = twisted_loop_validation(l);
    CHECK(v.match);
    CHECK_FALSE(is_identity(v.direct));
  }
  CHECK(twisted_loop_validation(CurvePath(0.0, Mat3::Identity())).match);
  CHECK_THROWS_AS(twisted_loop_validation(lambda_generators()[0]), InputError);
  // A twist moving the identity flex cannot act on a torsion set.
  CHECK_THROWS_AS(track(fermat_set(PointKind::torsion(2)), twisted_generators()[0]), InputError);
}

TEST_CASE("connectivity") {
  const auto lam = lambda_generators();
  auto all = lam;
  for (const auto& t : twisted_generators()) all.push_back(t);
  const auto c1 = connectivity_check(1, lam);
  CHECK_FALSE(c1.transitive);
  CHECK(c1.orbits.size() == 9);
  CHECK(connectivity_check(1, all).transitive);
  const auto c2 = connectivity_check(2, all);
  CHECK(c2.points == 27);
  CHECK(c2.transitive);
  for (const auto& cert : c2.certificates) CHECK(cert.min_margin >= 0.4);
  CHECK_THROWS_AS(connectivity_check(7, all), InputError);
}

TEST_CASE("loop files") {
  const auto shipped = load_loops(data_file());
  REQUIRE(shipped.size() == 7);
  auto builtin = lambda_generators();
  for (const auto& t : twisted_generators()) builtin.push_back(t);
  const auto set = fermat_set(PointKind::type_points(2));
  for (std::size_t i = 0; i < shipped.size(); ++i) {
    CHECK(shipped[i].name() == builtin[i].name());
    CHECK(track(set, shipped[i]).monodromy.perm == track(set, builtin[i]).monodromy.perm);
  }
  std::stringstream ss;
  write_loops(ss, shipped);
  const auto again = read_loops(ss);
  REQUIRE(again.size() == shipped.size());
  for (std::size_t i = 0; i < again.size(); ++i) CHECK(std::abs(again[i].end() - shipped[i].end()) < 1e-12);

  auto bad = [](const std::string& text) {
    std::istringstream in(text);
    return read_loops(in);
  };
  CHECK_THROWS_AS(bad(""), InputError);
  CHECK_THROWS_AS(bad("multisect-loops 2\n"), InputError);
  CHECK_THROWS_AS(bad("multisect-loops 1\nline 0 0 1 0\n"), InputError);
  CHECK_THROWS_AS(bad("multisect-loops 1\nloop a\nline 0 0 x 0\nend\n"), InputError);
  CHECK_THROWS_AS(bad("multisect-loops 1\nloop a\nline 0 0 0 0\ntwist 1:0 0:0\nend\n"), InputError);
  CHECK_THROWS_AS(bad("multisect-loops 1\nloop a\nline 0 0 0.5 0\n"), InputError);
  CHECK_THROWS_AS(load_loops("/nonexistent/loops.txt"), InputError);
  CHECK(bad("multisect-loops 1\n# comment\nloop a\nline 0 0 0.5 0\nend\n").size() == 1);
}
