#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "multisect/exactlinalg.hpp"

// SL2(Z) machinery: words, abelianization, the congruence subgroups Gamma_1(m),
// the index-2 subgroup, Reidemeister-Schreier presentations and H^1 with Z^2
// coefficients (the standard action by matrix multiplication).
namespace multisect::modgroup {

using exactlinalg::AbelianGroupStructure;
using exactlinalg::BigInt;
using exactlinalg::IntMatrix;

// One letter power g^e of a word. The meaning of `generator` depends on the alphabet.
struct Syllable {
  int generator = 0;
  long exponent = 0;
  bool operator==(const Syllable&) const = default;
};
using Word = std::vector<Syllable>;

// Alphabets. Matrix words use {S, T}; presentation words over the modular group use
// {S, U} with U = S*T and relators S^4, S^2 U^-3.
inline constexpr int kS = 0;
inline constexpr int kT = 1;
inline constexpr int kU = 1;

struct SL2Matrix {
  BigInt a = 1, b = 0, c = 0, d = 1;

  static SL2Matrix identity() { return {}; }
  SL2Matrix operator*(const SL2Matrix& o) const;
  SL2Matrix inverse() const { return {d, -b, -c, a}; }
  SL2Matrix operator-() const { return {-a, -b, -c, -d}; }
  BigInt det() const { return a * d - b * c; }
  BigInt trace() const { return a + d; }
  SL2Matrix pow(long e) const;
  bool operator==(const SL2Matrix& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  std::string to_string() const;
};

SL2Matrix matrix_S();  // [[0,-1],[1,0]]
SL2Matrix matrix_T();  // [[1,1],[0,1]]
SL2Matrix matrix_U();  // S*T = [[0,-1],[1,1]]

// A determinant-one integer matrix, optionally with a word in S, T evaluating to it.
class GroupElement2x2 {
 public:
  explicit GroupElement2x2(SL2Matrix m);
  GroupElement2x2(SL2Matrix m, Word st_word);  // throws if the word does not evaluate to m
  const SL2Matrix& matrix() const { return m_; }
  const std::optional<Word>& word() const { return word_; }

 private:
  SL2Matrix m_;
  std::optional<Word> word_;
};

// Merges adjacent equal letters and drops zero exponents.
Word free_reduce(const Word& w);
Word inverse_word(const Word& w);
Word concat(const Word& a, const Word& b);
std::size_t word_length(const Word& w);
// "S T^-2 S^3"; generator names supplied by the caller.
std::string word_to_string(const Word& w, const std::vector<std::string>& names);

SL2Matrix evaluate_st(const Word& w);
SL2Matrix evaluate_su(const Word& w);

// Euclidean decomposition; evaluate_st(word_decompose(M)) == M.
Word word_decompose(const SL2Matrix& M);

std::int64_t jordan_totient(std::int64_t m);

// Homomorphism SL2(Z) -> Z/12 normalized by T -> 1 (so S -> 9). Value in [0, 12).
int abelianization(const SL2Matrix& M);

bool gamma18_membership(const SL2Matrix& M);
bool gamma1_membership(const SL2Matrix& M, std::int64_t m);

struct ResidueVector {
  std::int64_t modulus = 1;
  std::int64_t u = 0, v = 0;
  ResidueVector() = default;
  ResidueVector(std::int64_t mod, std::int64_t u_, std::int64_t v_);
  auto operator<=>(const ResidueVector&) const = default;
};

struct CosetRepresentative {
  ResidueVector label;  // rep * e1 mod m
  Word word;            // in S, T
  SL2Matrix matrix;
};

// Left cosets g Gamma_1(m) <-> the SL2(Z/m)-orbit of e1. Breadth-first from e1 with
// generator order S then T; each layer is sorted by residue vector.
std::vector<CosetRepresentative> gamma1_cosets(std::int64_t m);

using MembershipPredicate = std::function<bool(const SL2Matrix&)>;

struct SubgroupGenerator {
  SL2Matrix matrix;
  Word parent_word;  // in S, U
};

struct PresentedSubgroup {
  std::size_t parent_index = 1;
  std::vector<SubgroupGenerator> generators;
  std::vector<Word> relators;      // over subgroup generator indices
  std::vector<Word> transversal;   // right coset representatives, in S, U
  std::size_t schreier_generators_before_simplification = 0;
};

// <S, U | S^4, S^2 U^-3>.
PresentedSubgroup modular_group_presentation();

// Prefix-closed right transversal H t_i built breadth-first over S, U.
std::vector<Word> schreier_transversal(const MembershipPredicate& member,
                                       std::size_t max_index = 100000);

// Throws InputError if the transversal is not prefix-closed or does not cover the cosets.
PresentedSubgroup reidemeister_schreier(const MembershipPredicate& member,
                                        const std::vector<Word>& transversal);

// Tietze moves: cyclic reduction, duplicate removal, elimination of generators that
// occur exactly once in some relator.
PresentedSubgroup simplify(const PresentedSubgroup& P);

PresentedSubgroup gamma1_presentation(std::int64_t m, bool simplified = true);
PresentedSubgroup gamma18_presentation(bool simplified = true);

// Abelianization of the presented group: Z^gens / (relator exponent sums).
AbelianGroupStructure abelianization_of(const PresentedSubgroup& P);

// True when some relator is a proper power w^k (k >= 2) of a word.
bool has_finite_order_relator(const PresentedSubgroup& P);

struct TorsionFreeCertificate {
  bool torsion_free = false;
  std::string certificate;
};
TorsionFreeCertificate torsion_free_check_gamma1(std::int64_t m);

// Fox-derivative system: 2 rows per relator, 2 columns per generator. Cocycles are
// the integer kernel.
IntMatrix cocycle_relation_matrix(const PresentedSubgroup& P);
// v -> (g_1 v - v, ..., g_k v - v) as a (2k x 2) matrix.
IntMatrix coboundary_matrix(const PresentedSubgroup& P);
AbelianGroupStructure h1_coefficients_Z2(const PresentedSubgroup& P);

mpq_class euler_characteristic_gamma1(std::int64_t m);

// Kernel of H^2(C4) + H^2(C6) -> H^2(C2), (a, b) -> a - b mod 2.
AbelianGroupStructure h2_sl2z();

}  // namespace multisect::modgroup
