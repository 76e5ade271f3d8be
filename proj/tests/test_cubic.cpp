#include <cmath>
#include <random>

#include "doctest.h"
#include "multisect/cubic.hpp"
#include "multisect/errors.hpp"

using namespace multisect;
using namespace multisect::cubic;

namespace {

const Complex kZeta = std::polar(1.0, 2.0 * M_PI / 3.0);

CubicForm random_cubic(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::array<Complex, 10> c;
  for (auto& v : c) v = Complex(g(rng), g(rng));
  return CubicForm(c);
}

Mat3 random_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat3 M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M(i, j) = Complex(g(rng), g(rng));
  return M;
}

// Hand solution of xyz = 0 and x^3 + y^3 + z^3 = 0.
std::vector<ProjPoint> fermat_flexes_by_hand() {
  std::vector<ProjPoint> out;
  const Complex roots[3] = {-1.0, -kZeta, -kZeta * kZeta};
  for (const Complex& r : roots) {
    out.emplace_back(0.0, 1.0, r);
    out.emplace_back(1.0, 0.0, r);
    out.emplace_back(1.0, r, 0.0);
  }
  sort_points(out);
  return out;
}

bool same_sets(const std::vector<ProjPoint>& a, const std::vector<ProjPoint>& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const auto& p : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size() && !found; ++j)
      if (!used[j] && fs_distance(p, b[j]) < tol) used[j] = found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("projective points") {
  ProjPoint p(2.0, 0.0, 1.0);
  CHECK(p[0] == Complex(1.0));
  CHECK(p[2] == Complex(0.5));
  ProjPoint q(Complex(0, 4), 0.0, Complex(0, 2));
  CHECK(fs_distance(p, q) < 1e-15);
  CHECK_THROWS_AS(ProjPoint(0.0, 0.0, 0.0), InputError);
  ProjPoint tie(1.0, -1.0, 0.0);
  CHECK(tie[0] == Complex(1.0));
}

TEST_CASE("hessian") {
  CubicForm H = hessian(CubicForm::fermat());
  CHECK(H.coefficient({1, 1, 1}) == Complex(216.0));
  CHECK(H.proportionality_residual(CubicForm::from_terms({{{1, 1, 1}, 1.0}})) < 1e-15);
  std::mt19937_64 rng(42);
  CubicForm F = random_cubic(rng);
  Mat3 P;
  P << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  CHECK(hessian(F.compose(P)).proportionality_residual(hessian(F).compose(P)) < 1e-12);
  const Complex c(1.5, -0.5);
  const CubicForm Hc = hessian(F.scaled(c));
  const CubicForm H3 = hessian(F).scaled(c * c * c);
  for (std::size_t i = 0; i < 10; ++i)
    CHECK(std::abs(Hc.coefficients()[i] - H3.coefficients()[i]) < 1e-10 * H3.max_coefficient());
}

TEST_CASE("flexes of the Fermat cubic and of the Hesse pencil") {
  auto fl = flexes(CubicForm::fermat());
  REQUIRE(fl.size() == 9);
  CHECK(same_sets(fl, fermat_flexes_by_hand(), 1e-10));
  auto fl2 = flexes(hesse_pencil(2.0).form);
  CHECK(same_sets(fl, fl2, 1e-10));
  const CubicForm H = hessian(CubicForm::fermat()).normalized();
  for (const auto& p : fl) {
    CHECK(curve_residual(CubicForm::fermat(), p) < 1e-8);
    CHECK(std::abs(H(p.coords())) < 1e-8);
  }
}

TEST_CASE("flexes of random cubics are stable under projective changes") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    CubicForm F = random_cubic(rng);
    auto fl = flexes(F);
    REQUIRE(fl.size() == 9);
    for (const auto& p : fl) CHECK(curve_residual(F, p) < 1e-8);
    Mat3 M = random_matrix(rng);
    auto moved = flexes(F.compose(M));
    std::vector<ProjPoint> back;
    for (const auto& p : moved) back.emplace_back(M * p.coords());
    CHECK(same_sets(fl, back, 1e-7));
  }
}

TEST_CASE("singular curves are rejected") {
  CHECK_THROWS_AS(flexes(hesse_pencil(1.0).form), SmoothnessError);
  CHECK_THROWS_AS(flexes(hesse_pencil(kZeta).form), SmoothnessError);
  // Nodal cubic y^2 z = x^3 + x^2 z.
  CubicForm nodal = CubicForm::from_terms({{{0, 2, 1}, 1.0}, {{3, 0, 0}, -1.0}, {{2, 0, 1}, -1.0}});
  CHECK_THROWS_AS(flexes(nodal), SmoothnessError);
  CubicForm cusp = CubicForm::from_terms({{{0, 2, 1}, 1.0}, {{3, 0, 0}, -1.0}});
  CHECK_THROWS_AS(flexes(cusp), SmoothnessError);
  CHECK_FALSE(is_smooth(nodal));
  CHECK(is_smooth(CubicForm::fermat()));
}

TEST_CASE("hesse pencil") {
  CHECK(hesse_pencil(0.0).form.proportionality_residual(CubicForm::fermat()) == 0.0);
  CHECK_FALSE(hesse_pencil(1.0).smooth);
  CHECK(hesse_pencil(2.0).smooth);
  CHECK_FALSE(hesse_pencil(kZeta * kZeta).smooth);
}

TEST_CASE("hesse configuration") {
  auto fl = flexes(CubicForm::fermat());
  auto cfg = hesse_configuration(fl);
  CHECK(cfg.lines.size() == 12);
  for (const auto& l : cfg.lines_through) CHECK(l.size() == 4);
  CHECK(cfg.max_collinearity_residual < 1e-8);

  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  std::vector<ProjPoint> generic;
  for (int i = 0; i < 9; ++i) generic.emplace_back(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
  CHECK_THROWS_AS(hesse_configuration(generic), ConfigurationError);

  Mat3 M = random_matrix(rng);
  std::vector<ProjPoint> moved;
  for (const auto& p : fl) moved.emplace_back(M * p.coords());
  auto cfg2 = hesse_configuration(moved, 1e-8);
  CHECK(cfg2.lines == cfg.lines);
}

TEST_CASE("third intersection") {
  const CubicForm F = CubicForm::fermat();
  ProjPoint P(1.0, -1.0, 0.0), Q(1.0, 0.0, -1.0);
  ProjPoint R = third_intersection(F, P, Q);
  CHECK(curve_residual(F, R) < 1e-9);
  CHECK(collinearity_residual(P.coords(), Q.coords(), R.coords()) < 1e-12);
  CHECK(fs_distance(R, third_intersection(F, Q, P)) < 1e-12);
  // The line x + y + z = 0 meets the Fermat cubic in (1,-1,0), (1,0,-1), (0,1,-1).
  CHECK(fs_distance(R, ProjPoint(0.0, 1.0, -1.0)) < 1e-12);
  for (const auto& f : flexes(F)) CHECK(fs_distance(third_intersection(F, f, f), f) < 1e-10);
}
