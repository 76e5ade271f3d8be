#include <cmath>

#include "doctest.h"
#include "multisect/errors.hpp"
#include "multisect/modgroup.hpp"
#include "multisect/multisection.hpp"
#include "multisect/verify/sampling.hpp"

using namespace multisect;
using namespace multisect::multisection;

namespace {

const Complex I(0.0, 1.0);

}  // namespace

TEST_CASE("lattice curve") {
  CHECK_THROWS_AS(LatticeCurve(Complex(0.3, 0.0)), InputError);
  CHECK_THROWS_AS(LatticeCurve(Complex(0.3, -1.0)), InputError);
  const LatticeCurve sq(I);
  CHECK(sq.shortest_vector() == doctest::Approx(1.0));
  CHECK(std::abs(sq.reduce(Complex(2.25, -0.5)) - Complex(0.25, 0.5)) < 1e-15);
  CHECK(sq.flat_distance(0.1, 0.9) == doctest::Approx(0.2));
  // A badly presented lattice has the same reduced geometry.
  const LatticeCurve skew(Complex(7.0, 1.0));
  CHECK(skew.shortest_vector() == doctest::Approx(1.0));
  CHECK(skew.flat_distance(0.0, Complex(0.0, 1.0)) < 1e-12);
  const LatticeCurve tall(Complex(0.1, 4.0));
  CHECK(tall.shortest_vector() == doctest::Approx(0.5));
}

TEST_CASE("type-3m lattice fibers") {
  const LatticeCurve sq(I);
  const auto f1 = sigma_m_lattice(sq, 1);
  REQUIRE(f1.degree == 9);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const Complex z = (static_cast<double>(a) + static_cast<double>(b) * I) / 3.0;
      double best = 1.0;
      for (const auto& p : f1.points) best = std::min(best, sq.flat_distance(p, z));
      CHECK(best < 1e-15);
    }
  CHECK(sigma_m_lattice(sq, 2).degree == 27);
  for (int m = 1; m <= 8; ++m)
    CHECK(sigma_m_lattice(LatticeCurve(Complex(0.2, 1.3)), m).degree ==
          static_cast<std::size_t>(9 * modgroup::jordan_totient(m)));
  CHECK_THROWS_AS(sigma_m_lattice(sq, 0), InputError);
}

TEST_CASE("epsilon") {
  const LatticeCurve sq(I);
  CHECK(epsilon(sigma_m_lattice(sq, 1)) == doctest::Approx(1.0 / 6.0));
  CHECK(epsilon(make_fiber(sq, {0.0}, "origin")) == doctest::Approx(0.5));
  CHECK_THROWS_AS(make_fiber(sq, {0.25, Complex(1.25, 1.0)}, "duplicate"), NumericalError);
  // Lipschitz in tau on samples.
  verify::Sampler s(2);
  for (int i = 0; i < 20; ++i) {
    const Complex tau(s.uniform() - 0.5, 0.8 + s.uniform());
    const Complex dtau = 1e-6 * s.complex_normal();
    const double e0 = epsilon(sigma_m_lattice(LatticeCurve(tau), 2));
    const double e1 = epsilon(sigma_m_lattice(LatticeCurve(tau + dtau), 2));
    CHECK(std::abs(e1 - e0) <= 10.0 * std::abs(dtau));
  }
}

TEST_CASE("deform_k") {
  const LatticeCurve sq(I);
  const auto f = sigma_m_lattice(sq, 1);
  const double eps = epsilon(f);
  const auto one = deform_k(f, constant_field(1.0), 1, eps);
  CHECK(one.degree == 9);
  for (std::size_t i = 0; i < f.points.size(); ++i)
    CHECK(sq.flat_distance(one.points[i], f.points[i] + eps / 4.0) < 1e-15);
  const auto two = deform_k(f, constant_field(1.0), 2, eps);
  CHECK(two.degree == 18);
  CHECK(min_pairwise_distance(two) >= eps / 8.0 - 1e-15);

  const LatticeCurve other(Complex(0.31, 0.92));
  const auto f2 = sigma_m_lattice(other, 2);
  const double e2 = epsilon(f2);
  const auto three = deform_k(f2, constant_field(Complex(1.0, 2.0)), 3, e2);
  CHECK(three.degree == 81);
  CHECK(min_pairwise_distance(three) >= e2 / 24.0 - 1e-15);

  CHECK_THROWS_AS(deform_k(f, constant_field(1.0), 0, eps), InputError);
  CHECK_THROWS_AS(deform_k(f, constant_field(1.0), 2, 2.0 * eps), InputError);
  CHECK_THROWS_AS(deform_k(f, [](Complex) { return Complex(2.0, 0.0); }, 2, eps), InputError);
  // Opposing fields cannot close the gap below half of it.
  const auto pair = make_fiber(sq, {0.0, 0.1}, "pair");
  const auto toward = deform_k(pair, [](Complex z) { return std::abs(z) < 1e-9 ? Complex(1.0) : Complex(-1.0); }, 1,
                               epsilon(pair));
  CHECK(min_pairwise_distance(toward) >= 0.05 - 1e-15);
}

TEST_CASE("deform_double") {
  const LatticeCurve sq(I);
  const auto f = sigma_m_lattice(sq, 1);
  const double eps = epsilon(f);
  const auto w = constant_field(Complex(1.0, 1.0));
  const auto d = deform_double(f, w, eps);
  CHECK(d.degree == 18);
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    const Complex a = d.points[2 * i] - f.points[i], b = d.points[2 * i + 1] - f.points[i];
    CHECK(std::abs(sq.shortest_representative(a + b)) < 1e-12);
  }
  // Sign symmetry.
  const auto dn = deform_double(f, constant_field(Complex(-1.0, -1.0)), eps);
  for (const auto& p : dn.points) {
    double best = 1.0;
    for (const auto& q : d.points) best = std::min(best, sq.flat_distance(p, q));
    CHECK(best < 1e-12);
  }
  // Homotopy samples.
  for (double t : {0.25, 0.5, 0.75, 1.0}) CHECK_NOTHROW(make_fiber(sq, deform_double_at(f, w, eps, t), "homotopy"));
  const auto collapsed = deform_double_at(f, w, eps, 0.0);
  for (std::size_t i = 0; i < f.points.size(); ++i) CHECK(collapsed[2 * i] == collapsed[2 * i + 1]);
  CHECK(deform_double(sigma_m_lattice(sq, 2), w, epsilon(sigma_m_lattice(sq, 2))).degree == 54);
}

TEST_CASE("flat geodesic direction") {
  const LatticeCurve sq(I);
  CHECK(std::abs(flat_geodesic_direction(sq, 0.0, 0.25) - 1.0) < 1e-15);
  CHECK(std::abs(flat_geodesic_direction(sq, 0.0, 0.75) + 1.0) < 1e-15);
  CHECK_THROWS_AS(flat_geodesic_direction(sq, 0.0, Complex(0.5, 0.5)), InputError);
  CHECK_THROWS_AS(flat_geodesic_direction(sq, 0.0, 0.5), InputError);
  CHECK_THROWS_AS(flat_geodesic_direction(sq, 0.2, Complex(1.2, 1.0)), InputError);
  verify::Sampler s(6);
  const LatticeCurve L(Complex(0.4, 1.1));
  for (int i = 0; i < 50; ++i) {
    const Complex a = s.complex_normal(), b = s.complex_normal();
    const Complex u = flat_geodesic_direction(L, a, b), v = flat_geodesic_direction(L, b, a);
    CHECK(std::abs(u + v) < 1e-12);
    CHECK(std::abs(std::abs(u) - 1.0) < 1e-15);
  }
}
