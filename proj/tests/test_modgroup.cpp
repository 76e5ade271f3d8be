#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "multisect/errors.hpp"
#include "multisect/modgroup.hpp"
#include "multisect/verify/oracles.hpp"

using namespace multisect;
using namespace multisect::modgroup;

namespace {

// Elements of exact order m in (Z/m)^2.
std::int64_t count_order_m(std::int64_t m) {
  std::int64_t n = 0;
  for (std::int64_t u = 0; u < m; ++u)
    for (std::int64_t v = 0; v < m; ++v)
      if (std::gcd(std::gcd(u, v), m) == 1) ++n;
  return n;
}

SL2Matrix random_product(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), letter(0, 3);
  SL2Matrix M;
  const SL2Matrix gens[4] = {matrix_S(), matrix_T(), matrix_S().inverse(), matrix_T().inverse()};
  for (int i = len(rng); i > 0; --i) M = M * gens[letter(rng)];
  return M;
}

}  // namespace

TEST_CASE("jordan totient") {
  CHECK(jordan_totient(1) == 1);
  CHECK(jordan_totient(2) == 3);
  CHECK(jordan_totient(6) == 24);
  for (std::int64_t m = 1; m <= 30; ++m) CHECK(jordan_totient(m) == count_order_m(m));
  CHECK_THROWS_AS(jordan_totient(0), InputError);
}

TEST_CASE("word decomposition") {
  CHECK(word_decompose(SL2Matrix::identity()).empty());
  CHECK(word_decompose(matrix_T()) == Word{{kT, 1}});
  SL2Matrix M{2, 1, 1, 1};
  CHECK(evaluate_st(word_decompose(M)) == M);
  CHECK(evaluate_st(word_decompose(-SL2Matrix::identity())) == -SL2Matrix::identity());
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 1000; ++i) {
    SL2Matrix R = random_product(rng, 60);
    CHECK(evaluate_st(word_decompose(R)) == R);
  }
  CHECK_THROWS_AS(word_decompose(SL2Matrix{2, 0, 0, 1}), InputError);
}

TEST_CASE("abelianization") {
  CHECK(abelianization(SL2Matrix::identity()) == 0);
  CHECK(abelianization(matrix_T()) == 1);
  CHECK(abelianization(matrix_S()) == 9);
  std::mt19937_64 rng(77);
  for (int i = 0; i < 200; ++i) {
    SL2Matrix A = random_product(rng, 30), B = random_product(rng, 30);
    CHECK(abelianization(A * B) == (abelianization(A) + abelianization(B)) % 12);
  }
  auto order = [](int x) {
    int k = 1;
    while ((k * x) % 12 != 0) ++k;
    return k;
  };
  CHECK(order(abelianization(matrix_S())) == 4);
  CHECK(order(abelianization(matrix_U())) == 6);
}

TEST_CASE("membership predicates") {
  CHECK(gamma18_membership(-SL2Matrix::identity()));
  CHECK_FALSE(gamma18_membership(matrix_T()));
  CHECK(gamma18_membership(matrix_T().pow(2)));
  CHECK(gamma1_membership(SL2Matrix::identity(), 7));
  CHECK(gamma1_membership(matrix_T(), 5));
  CHECK_FALSE(gamma1_membership(matrix_S(), 5));
}

TEST_CASE("gamma18 has index 2") {
  // Cosets of the transversal {1, T} are distinct and cover.
  const SL2Matrix T = matrix_T();
  CHECK_FALSE(gamma18_membership(T.inverse()));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    SL2Matrix g = random_product(rng, 40);
    CHECK((gamma18_membership(g) != gamma18_membership(g * T.inverse())));
  }
}

TEST_CASE("gamma1 cosets") {
  CHECK(gamma1_cosets(2).size() == 3);
  CHECK(gamma1_cosets(3).size() == 8);
  CHECK(gamma1_cosets(4).size() == 12);
  CHECK(gamma1_cosets(1).size() == 1);
  CHECK_THROWS_AS(gamma1_cosets(0), InputError);
  for (std::int64_t m = 2; m <= 12; ++m) {
    auto cosets = gamma1_cosets(m);
    CHECK(static_cast<std::int64_t>(cosets.size()) == jordan_totient(m));
    std::set<ResidueVector> labels;
    for (const auto& c : cosets) {
      CHECK(evaluate_st(c.word) == c.matrix);
      CHECK(ResidueVector(m, c.matrix.a.get_si(), c.matrix.c.get_si()) == c.label);
      labels.insert(c.label);
    }
    CHECK(static_cast<std::int64_t>(labels.size()) == count_order_m(m));
  }
}

TEST_CASE("modular group presentation and reidemeister-schreier") {
  auto P = modular_group_presentation();
  CHECK(abelianization_of(P).to_string() == "Z/12");
  auto whole = reidemeister_schreier([](const SL2Matrix&) { return true; }, {Word{}});
  CHECK(whole.parent_index == 1);
  CHECK(whole.generators.size() == 2);
  CHECK(whole.relators == P.relators);

  MembershipPredicate g18 = [](const SL2Matrix& M) { return gamma18_membership(M); };
  auto Q = reidemeister_schreier(g18, {Word{}, Word{{kS, 1}}});
  CHECK(Q.parent_index == 2);
  CHECK(Q.schreier_generators_before_simplification == 3);
  for (const auto& g : Q.generators) {
    CHECK(g18(g.matrix));
    CHECK(evaluate_su(g.parent_word) == g.matrix);
  }
  CHECK_THROWS_AS(reidemeister_schreier(g18, {Word{}, Word{{kS, 1}, {kU, 1}}}), InputError);
  CHECK_THROWS_AS(reidemeister_schreier(g18, {Word{}}), InputError);
  CHECK_THROWS_AS(reidemeister_schreier(g18, {Word{}, Word{{kS, 2}}}), InputError);
}

TEST_CASE("gamma1(m) presentations are free of the expected rank") {
  for (std::int64_t m = 4; m <= 8; ++m) {
    auto P = gamma1_presentation(m);
    CHECK(P.parent_index == static_cast<std::size_t>(jordan_totient(m)));
    CHECK(P.schreier_generators_before_simplification == P.parent_index + 1);
    CHECK_FALSE(has_finite_order_relator(P));
    auto ab = abelianization_of(P);
    CHECK(ab.free_rank == static_cast<std::size_t>(1 + jordan_totient(m) / 12));
    CHECK(ab.torsion.empty());
    for (const auto& g : P.generators) CHECK(gamma1_membership(g.matrix, m));
  }
  CHECK(abelianization_of(gamma1_presentation(4)).free_rank == 2);
}

TEST_CASE("torsion-freeness") {
  CHECK(torsion_free_check_gamma1(4).torsion_free);
  auto c3 = torsion_free_check_gamma1(3);
  CHECK_FALSE(c3.torsion_free);
  CHECK(c3.certificate.find("-1") != std::string::npos);
  CHECK_FALSE(torsion_free_check_gamma1(1).torsion_free);
  for (std::int64_t m = 1; m <= 12; ++m) CHECK(torsion_free_check_gamma1(m).torsion_free == (m >= 4));
}

TEST_CASE("first cohomology with Z^2 coefficients") {
  CHECK(h1_coefficients_Z2(modular_group_presentation()).is_trivial());
  CHECK(h1_coefficients_Z2(gamma18_presentation()).is_trivial());
  CHECK(h1_coefficients_Z2(gamma18_presentation(false)).is_trivial());
  auto g4 = gamma1_presentation(4);
  CHECK(g4.relators.empty());
  auto h = h1_coefficients_Z2(g4);
  CHECK(h.free_rank == 2);
  // Free group of rank 2: Z^1 = Z^4, and B^1 has rank 2.
  CHECK(exactlinalg::smith_normal_form(coboundary_matrix(g4)).rank == 2);
}

TEST_CASE("mod N cocycle counts agree with smith normal form") {
  auto P = gamma18_presentation();
  IntMatrix J = cocycle_relation_matrix(P), C = coboundary_matrix(P);
  for (std::uint64_t N : {2, 3, 4, 5}) {
    CHECK(verify::count_kernel_mod(J, N) == verify::predicted_kernel_mod(J, N));
    CHECK(verify::count_image_mod(C, N) == verify::predicted_image_mod(C, N));
  }
}

TEST_CASE("euler characteristic and H2") {
  CHECK(euler_characteristic_gamma1(4) == -1);
  CHECK(euler_characteristic_gamma1(5) == -2);
  CHECK(euler_characteristic_gamma1(1) == mpq_class(-1, 12));
  auto h2 = h2_sl2z();
  CHECK(h2.to_string() == "Z/12");
  // Kernel counting in Z/4 + Z/6.
  int kernel = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 6; ++b)
      if ((a - b) % 2 == 0) ++kernel;
  CHECK(kernel == 12);
  int order = 1;
  while (!((order % 4) == 0 && (order % 6) == 0)) ++order;
  CHECK(order == 12);
}
