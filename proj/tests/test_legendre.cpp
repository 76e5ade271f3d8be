#include <cmath>

#include "doctest.h"
#include "multisect/elliptic.hpp"
#include "multisect/errors.hpp"
#include "multisect/legendre.hpp"
#include "multisect/verify/sampling.hpp"

using namespace multisect;
using namespace multisect::legendre;

TEST_CASE("legendre curve") {
  CHECK_THROWS_AS(LegendreCurve(0.0), InputError);
  CHECK_THROWS_AS(LegendreCurve(1.0), InputError);
  const LegendreCurve L(-1.0);
  CHECK(cubic::curve_residual(L.form(), LegendreCurve::identity()) < 1e-15);
  CHECK(cubic::is_smooth(L.form()));
  CHECK_NOTHROW(elliptic::EllipticContext(L.form(), LegendreCurve::identity()));
}

TEST_CASE("two-torsion sections") {
  const auto r = two_torsion_sections(-1.0);
  CHECK(cubic::fs_distance(r.points[2], cubic::ProjPoint(-1.0, 0.0, 1.0)) < 1e-15);
  CHECK(r.max_curve_residual < 1e-12);
  CHECK(r.all_two_torsion);
  CHECK(r.exhaustive);
  CHECK(two_torsion_sections(2.0).exhaustive);
  verify::Sampler s(13);
  for (int i = 0; i < 20; ++i) {
    const Complex t = 2.0 * s.complex_normal();
    const auto q = two_torsion_sections(t);
    CHECK(q.max_curve_residual < 1e-9);
    CHECK(q.all_two_torsion);
    CHECK(q.exhaustive);
  }
  CHECK_THROWS_AS(two_torsion_sections(1.0), InputError);
}

TEST_CASE("normalization to Legendre form") {
  const Complex t0(0.3, -1.7);
  const auto ns = to_legendre(LegendreCurve(t0).form());
  CHECK(ns.size() == 6);
  bool found = false;
  for (const auto& n : ns) found = found || std::abs(n.t - t0) < 1e-8;
  CHECK(found);
  for (const auto& n : ns)
    for (const auto& u : cross_ratio_orbit(n.t)) {
      double best = 1.0;
      for (const auto& m : ns) best = std::min(best, std::abs(m.t - u));
      CHECK(best < 1e-8);
    }

  const auto fermat = to_legendre(cubic::CubicForm::fermat());
  CHECK(fermat.size() == 6);
  const Complex zeta(-0.5, std::sqrt(3.0) / 2.0);
  for (const auto& n : fermat) {
    CHECK(n.residual < 1e-8);
    CHECK(std::min(std::abs(n.t + zeta), std::abs(n.t + zeta * zeta)) < 1e-8);
  }

  // Transport the 2-torsion back to a random cubic.
  verify::Sampler s(3);
  const auto F = s.cubic_form();
  for (const auto& n : to_legendre(F)) {
    for (const auto& P : two_torsion_sections(n.t).points)
      CHECK(cubic::curve_residual(F, cubic::ProjPoint(n.to_source * P.coords())) < 1e-7);
  }
}
