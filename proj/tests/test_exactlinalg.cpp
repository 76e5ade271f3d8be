#include <random>

#include "doctest.h"
#include "multisect/errors.hpp"
#include "multisect/exactlinalg.hpp"
#include "multisect/verify/oracles.hpp"

using namespace multisect;
using namespace multisect::exactlinalg;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix M(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) M(i, j) = dist(rng);
  return M;
}

IntMatrix random_low_rank(std::mt19937_64& rng, std::size_t r, std::size_t c, std::size_t k, long bound) {
  return random_matrix(rng, r, k, bound) * random_matrix(rng, k, c, bound);
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix U = IntMatrix::identity(n);
  if (n < 2) return U;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int step = 0; step < 4 * static_cast<int>(n); ++step) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    long q = coef(rng);
    for (std::size_t c = 0; c < n; ++c) U(i, c) += q * U(j, c);
  }
  return U;
}

bool divisibility_chain(const SmithDecomposition& s) {
  for (std::size_t i = 0; i + 1 < s.rank; ++i)
    if (s.D(i + 1, i + 1) % s.D(i, i) != 0) return false;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) <= 0) return false;
  return true;
}

}  // namespace

TEST_CASE("smith normal form on small fixed matrices") {
  auto s = smith_normal_form(IntMatrix::identity(2));
  CHECK(s.D == IntMatrix::identity(2));
  s = smith_normal_form(IntMatrix::zero(3, 2));
  CHECK(s.D == IntMatrix::zero(3, 2));
  CHECK(s.rank == 0);
  IntMatrix M{{4, 0}, {2, -3}};
  s = smith_normal_form(M);
  CHECK(s.D == IntMatrix{{1, 0}, {0, 12}});
  CHECK(s.U * M * s.V == s.D);
}

TEST_CASE("cokernel values") {
  CHECK(cokernel(IntMatrix::identity(2)).is_trivial());
  auto g = cokernel(IntMatrix{{4, 0}, {2, -3}});
  CHECK(g.free_rank == 0);
  REQUIRE(g.torsion.size() == 1);
  CHECK(g.torsion[0] == 12);
  CHECK(g.to_string() == "Z/12");
  g = cokernel(IntMatrix::zero(1, 1));
  CHECK(g.free_rank == 1);
  CHECK(g.torsion.empty());
}

TEST_CASE("subquotient values") {
  auto g = subquotient(IntMatrix::identity(2), IntMatrix{{2, 0}, {0, 2}});
  CHECK(g.free_rank == 0);
  CHECK(g.torsion == std::vector<BigInt>{2, 2});
  IntMatrix Z{{3, 1}, {0, 5}};
  CHECK(subquotient(Z, Z).is_trivial());
  g = subquotient(IntMatrix::identity(2), IntMatrix::zero(2, 2));
  CHECK(g.free_rank == 2);
  CHECK_THROWS_AS(subquotient(IntMatrix{{2, 0}, {0, 2}}, IntMatrix::identity(2)), InconsistentInputError);
}

TEST_CASE("solve_integer and kernel") {
  IntMatrix M{{2, 4}, {1, 3}};
  IntMatrix B{{6}, {4}};
  auto X = solve_integer(M, B);
  CHECK(M * X == B);
  CHECK_THROWS_AS(solve_integer(IntMatrix{{2}}, IntMatrix{{1}}), InconsistentInputError);
  IntMatrix K = integer_kernel(IntMatrix{{1, -1, -2}});
  CHECK(K.cols() == 2);
  CHECK((IntMatrix{{1, -1, -2}} * K).is_zero());
}

TEST_CASE("smith decomposition identity on random matrices") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> dim(1, 12);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    IntMatrix M = (trial % 3 == 0) ? random_low_rank(rng, r, c, std::min(r, c) / 2 + 1, 50)
                                   : random_matrix(rng, r, c, 1000000);
    auto s = smith_normal_form(M);
    CHECK(s.U * M * s.V == s.D);
    CHECK(s.D.is_diagonal());
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    CHECK(divisibility_chain(s));
  }
}

TEST_CASE("smith decomposition on 40x40 matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2; ++trial) {
    IntMatrix M = trial == 0 ? random_matrix(rng, 40, 40, 1000000) : random_low_rank(rng, 40, 38, 30, 1000);
    auto s = smith_normal_form(M);
    CHECK(s.U * M * s.V == s.D);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    CHECK(divisibility_chain(s));
  }
}

TEST_CASE("cokernel invariant under unimodular changes") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 2 + trial % 5, c = 1 + trial % 6;
    IntMatrix M = random_low_rank(rng, r, c, 1 + trial % 3, 9);
    IntMatrix N = random_unimodular(rng, r) * M * random_unimodular(rng, c);
    CHECK(cokernel(M) == cokernel(N));
  }
}

TEST_CASE("cokernel agrees with determinantal divisors") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 5;
    IntMatrix M = trial % 2 ? random_matrix(rng, r, c, 12) : random_low_rank(rng, r, c, 1 + trial % 3, 6);
    CHECK(cokernel(M) == verify::cokernel_by_minors(M));
  }
}

TEST_CASE("subquotient agrees with lattice enumeration") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 25; ++trial) {
    IntMatrix Z = random_matrix(rng, 2, 2, 4);
    if (determinant(Z) == 0) continue;
    IntMatrix C = random_matrix(rng, 2, 2, 5);
    if (determinant(C) == 0) continue;
    IntMatrix B = Z * C;
    // Z C = B, so span(Z)/span(B) is Z^2 / span(C).
    const BigInt D = abs(determinant(C));
    if (D > 100) continue;
    auto g = subquotient(Z, B);
    CHECK(verify::torsion_profile(g, 24) == verify::torsion_profile_by_enumeration(C, 24));
    CHECK(g.torsion_order() == D);
    ++checked;
  }
  CHECK(checked == 25);
}
