#include "multisect/modgroup.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "multisect/errors.hpp"

namespace multisect::modgroup {

using exactlinalg::cokernel;
using exactlinalg::integer_kernel;
using exactlinalg::subquotient;

SL2Matrix SL2Matrix::operator*(const SL2Matrix& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

SL2Matrix SL2Matrix::pow(long e) const {
  SL2Matrix base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  SL2Matrix out;
  while (n) {
    if (n & 1UL) out = out * base;
    base = base * base;
    n >>= 1;
  }
  return out;
}

std::string SL2Matrix::to_string() const {
  return "[[" + a.get_str() + "," + b.get_str() + "],[" + c.get_str() + "," + d.get_str() + "]]";
}

SL2Matrix matrix_S() { return {0, -1, 1, 0}; }
SL2Matrix matrix_T() { return {1, 1, 0, 1}; }
SL2Matrix matrix_U() { return {0, -1, 1, 1}; }

GroupElement2x2::GroupElement2x2(SL2Matrix m) : m_(std::move(m)) {
  if (m_.det() != 1) throw InputError("GroupElement2x2: determinant is not 1");
}

GroupElement2x2::GroupElement2x2(SL2Matrix m, Word st_word) : GroupElement2x2(std::move(m)) {
  if (!(evaluate_st(st_word) == m_))
    throw InputError("GroupElement2x2: word does not evaluate to the matrix");
  word_ = std::move(st_word);
}

Word free_reduce(const Word& w) {
  Word out;
  for (const auto& s : w) {
    if (s.exponent == 0) continue;
    if (!out.empty() && out.back().generator == s.generator) {
      out.back().exponent += s.exponent;
      if (out.back().exponent == 0) out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->generator, -it->exponent});
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::size_t word_length(const Word& w) {
  std::size_t n = 0;
  for (const auto& s : w) n += static_cast<std::size_t>(s.exponent < 0 ? -s.exponent : s.exponent);
  return n;
}

std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    const auto g = static_cast<std::size_t>(w[i].generator);
    os << (g < names.size() ? names[g] : "g" + std::to_string(g));
    if (w[i].exponent != 1) os << '^' << w[i].exponent;
  }
  return os.str();
}

namespace {

SL2Matrix evaluate(const Word& w, const SL2Matrix& g0, const SL2Matrix& g1) {
  SL2Matrix out;
  for (const auto& s : w) out = out * (s.generator == 0 ? g0 : g1).pow(s.exponent);
  return out;
}

// S has order 4 in SL2(Z): keep its exponents in {1, 2, 3}.
Word normalize_st(Word w) {
  for (;;) {
    Word r = free_reduce(w);
    bool changed = false;
    Word out;
    for (auto s : r) {
      if (s.generator == kS) {
        long e = ((s.exponent % 4) + 4) % 4;
        if (e != s.exponent) changed = true;
        s.exponent = e;
      }
      if (s.exponent != 0) out.push_back(s);
    }
    if (!changed) return out;
    w = std::move(out);
  }
}

}  // namespace

SL2Matrix evaluate_st(const Word& w) { return evaluate(w, matrix_S(), matrix_T()); }
SL2Matrix evaluate_su(const Word& w) { return evaluate(w, matrix_S(), matrix_U()); }

Word word_decompose(const SL2Matrix& M) {
  if (M.det() != 1) throw InputError("word_decompose: determinant is not 1");
  SL2Matrix R = M;
  Word prefix;
  while (R.c != 0) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), R.a.get_mpz_t(), R.c.get_mpz_t());
    if (q != 0) {
      prefix.push_back({kT, q.get_si()});
      R = matrix_T().pow(-q.get_si()) * R;
    }
    // R = S * (S^-1 R); the new lower-left entry is -a with |a| < |c|.
    prefix.push_back({kS, 1});
    R = matrix_S().inverse() * R;
  }
  if (R.a == 1) {
    prefix.push_back({kT, R.b.get_si()});
  } else {
    prefix.push_back({kS, 2});
    prefix.push_back({kT, -R.b.get_si()});
  }
  Word w = normalize_st(prefix);
  if (!(evaluate_st(w) == M)) throw NumericalError("word_decompose: internal round-trip failure");
  return w;
}

std::int64_t jordan_totient(std::int64_t m) {
  if (m <= 0) throw InputError("jordan_totient: m must be positive");
  std::int64_t result = m * m;
  std::int64_t n = m;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result = result / (p * p) * (p * p - 1);
  }
  if (n > 1) result = result / (n * n) * (n * n - 1);
  return result;
}

int abelianization(const SL2Matrix& M) {
  const Word w = word_decompose(M);
  long total = 0;
  for (const auto& s : w) total += (s.generator == kS ? 9 : 1) * (s.exponent % 12);
  return static_cast<int>(((total % 12) + 12) % 12);
}

bool gamma18_membership(const SL2Matrix& M) { return abelianization(M) % 2 == 0; }

namespace {
std::int64_t mod_of(const BigInt& x, std::int64_t m) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_si();
}
}  // namespace

bool gamma1_membership(const SL2Matrix& M, std::int64_t m) {
  if (m < 1) throw InputError("gamma1_membership: m must be positive");
  return mod_of(M.a, m) == 1 % m && mod_of(M.c, m) == 0 && mod_of(M.d, m) == 1 % m;
}

ResidueVector::ResidueVector(std::int64_t mod, std::int64_t u_, std::int64_t v_) : modulus(mod) {
  if (mod < 1) throw InputError("ResidueVector: modulus must be positive");
  u = ((u_ % mod) + mod) % mod;
  v = ((v_ % mod) + mod) % mod;
}

std::vector<CosetRepresentative> gamma1_cosets(std::int64_t m) {
  if (m < 1) throw InputError("gamma1_cosets: m must be positive");
  std::vector<CosetRepresentative> out;
  out.push_back({ResidueVector(m, 1, 0), Word{}, SL2Matrix::identity()});
  if (m == 1) return out;
  std::set<ResidueVector> seen{out.front().label};
  const SL2Matrix gens[2] = {matrix_S(), matrix_T()};
  std::vector<std::size_t> layer{0};
  while (!layer.empty()) {
    std::vector<CosetRepresentative> fresh;
    for (std::size_t idx : layer) {
      for (int g = 0; g < 2; ++g) {
        const auto& rep = out[idx];
        SL2Matrix M = gens[g] * rep.matrix;
        ResidueVector v(m, mod_of(M.a, m), mod_of(M.c, m));
        if (seen.count(v)) continue;
        bool pending = std::any_of(fresh.begin(), fresh.end(),
                                   [&](const CosetRepresentative& f) { return f.label == v; });
        if (pending) continue;
        fresh.push_back({v, normalize_st(concat(Word{{g, 1}}, rep.word)), M});
      }
    }
    std::sort(fresh.begin(), fresh.end(),
              [](const CosetRepresentative& x, const CosetRepresentative& y) { return x.label < y.label; });
    layer.clear();
    for (auto& f : fresh) {
      seen.insert(f.label);
      layer.push_back(out.size());
      out.push_back(std::move(f));
    }
  }
  return out;
}

PresentedSubgroup modular_group_presentation() {
  PresentedSubgroup P;
  P.parent_index = 1;
  P.generators = {{matrix_S(), Word{{kS, 1}}}, {matrix_U(), Word{{kU, 1}}}};
  P.relators = {Word{{0, 4}}, Word{{0, 2}, {1, -3}}};
  P.transversal = {Word{}};
  P.schreier_generators_before_simplification = 2;
  return P;
}

namespace {

// Letter form: generator g with exponent +-1 is encoded as +-(g + 1).
using Letters = std::vector<int>;

Letters to_letters(const Word& w) {
  Letters out;
  for (const auto& s : w) {
    const int code = s.generator + 1;
    for (long k = 0; k < (s.exponent < 0 ? -s.exponent : s.exponent); ++k)
      out.push_back(s.exponent < 0 ? -code : code);
  }
  return out;
}

Word from_letters(const Letters& l) {
  Word w;
  for (int c : l) w.push_back({(c < 0 ? -c : c) - 1, c < 0 ? -1L : 1L});
  return free_reduce(w);
}

Letters reduce_letters(const Letters& l) {
  Letters out;
  for (int c : l) {
    if (!out.empty() && out.back() == -c) out.pop_back();
    else out.push_back(c);
  }
  return out;
}

Letters invert_letters(const Letters& l) {
  Letters out(l.rbegin(), l.rend());
  for (auto& c : out) c = -c;
  return out;
}

Letters cyclic_reduce(Letters l) {
  l = reduce_letters(l);
  std::size_t i = 0, j = l.size();
  while (j - i >= 2 && l[i] == -l[j - 1]) {
    ++i;
    --j;
  }
  return Letters(l.begin() + static_cast<long>(i), l.begin() + static_cast<long>(j));
}

Letters canonical_cyclic(const Letters& l) {
  if (l.empty()) return l;
  Letters best;
  for (const Letters& base : {l, invert_letters(l)}) {
    for (std::size_t r = 0; r < base.size(); ++r) {
      Letters rot(base.begin() + static_cast<long>(r), base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + static_cast<long>(r));
      if (best.empty() || rot < best) best = std::move(rot);
    }
  }
  return best;
}

SL2Matrix letter_matrix(int code) {
  const SL2Matrix g = (std::abs(code) == 1) ? matrix_S() : matrix_U();
  return code < 0 ? g.inverse() : g;
}

SL2Matrix evaluate_letters(const Letters& l) {
  SL2Matrix out;
  for (int c : l) out = out * letter_matrix(c);
  return out;
}

}  // namespace

std::vector<Word> schreier_transversal(const MembershipPredicate& member, std::size_t max_index) {
  std::vector<Letters> words{Letters{}};
  std::vector<SL2Matrix> mats{SL2Matrix::identity()};
  std::vector<SL2Matrix> invs{SL2Matrix::identity()};
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (int code : {1, 2}) {
      const SL2Matrix g = mats[i] * letter_matrix(code);
      bool known = false;
      for (std::size_t j = 0; j < words.size() && !known; ++j) known = member(g * invs[j]);
      if (known) continue;
      if (words.size() >= max_index) throw InputError("schreier_transversal: index exceeds limit");
      Letters w = words[i];
      w.push_back(code);
      words.push_back(std::move(w));
      mats.push_back(g);
      invs.push_back(g.inverse());
    }
  }
  std::vector<Word> out;
  for (const auto& w : words) out.push_back(from_letters(w));
  return out;
}

PresentedSubgroup reidemeister_schreier(const MembershipPredicate& member,
                                        const std::vector<Word>& transversal) {
  const std::size_t n = transversal.size();
  if (n == 0) throw InputError("reidemeister_schreier: empty transversal");
  std::vector<Letters> reps;
  for (const auto& w : transversal) reps.push_back(reduce_letters(to_letters(w)));
  {
    std::set<Letters> index(reps.begin(), reps.end());
    if (!index.count(Letters{})) throw InputError("reidemeister_schreier: transversal lacks the identity");
    for (const auto& r : reps) {
      if (r.empty()) continue;
      Letters prefix(r.begin(), r.end() - 1);
      if (!index.count(prefix))
        throw InputError("reidemeister_schreier: transversal is not prefix-closed");
    }
  }
  std::vector<SL2Matrix> mats, invs;
  for (const auto& r : reps) {
    mats.push_back(evaluate_letters(r));
    invs.push_back(mats.back().inverse());
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (member(mats[i] * invs[j]))
        throw InputError("reidemeister_schreier: two representatives share a coset");

  // next[i][x]: coset of t_i * x.
  std::vector<std::array<std::size_t, 2>> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int x = 0; x < 2; ++x) {
      const SL2Matrix g = mats[i] * letter_matrix(x + 1);
      std::size_t found = n;
      for (std::size_t j = 0; j < n; ++j)
        if (member(g * invs[j])) {
          found = j;
          break;
        }
      if (found == n) throw InputError("reidemeister_schreier: transversal does not cover all cosets");
      next[i][static_cast<std::size_t>(x)] = found;
    }
  }

  PresentedSubgroup P;
  P.parent_index = n;
  P.transversal = transversal;
  // Schreier generator t_i x t_next^-1, or -1 when it freely reduces to the identity.
  std::vector<std::array<int, 2>> gen_index(n, {-1, -1});
  for (std::size_t i = 0; i < n; ++i) {
    for (int x = 0; x < 2; ++x) {
      const std::size_t j = next[i][static_cast<std::size_t>(x)];
      Letters w = reps[i];
      w.push_back(x + 1);
      const Letters inv = invert_letters(reps[j]);
      w.insert(w.end(), inv.begin(), inv.end());
      w = reduce_letters(w);
      if (w.empty()) continue;
      SubgroupGenerator g{mats[i] * letter_matrix(x + 1) * invs[j], from_letters(w)};
      if (!member(g.matrix)) throw NumericalError("reidemeister_schreier: generator outside subgroup");
      gen_index[i][static_cast<std::size_t>(x)] = static_cast<int>(P.generators.size());
      P.generators.push_back(std::move(g));
    }
  }
  P.schreier_generators_before_simplification = P.generators.size();

  std::vector<std::array<std::size_t, 2>> prev(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < 2; ++x) prev[next[i][x]][x] = i;

  const auto parent = modular_group_presentation();
  for (std::size_t c = 0; c < n; ++c) {
    for (const auto& R : parent.relators) {
      Letters out;
      std::size_t cur = c;
      for (int code : to_letters(R)) {
        const std::size_t x = static_cast<std::size_t>(std::abs(code) - 1);
        if (code > 0) {
          const int g = gen_index[cur][x];
          if (g >= 0) out.push_back(g + 1);
          cur = next[cur][x];
        } else {
          const std::size_t p = prev[cur][x];
          const int g = gen_index[p][x];
          if (g >= 0) out.push_back(-(g + 1));
          cur = p;
        }
      }
      if (cur != c) throw NumericalError("reidemeister_schreier: relator does not close up");
      P.relators.push_back(from_letters(reduce_letters(out)));
    }
  }
  return P;
}

PresentedSubgroup simplify(const PresentedSubgroup& P) {
  const std::size_t k = P.generators.size();
  std::vector<bool> alive(k, true);
  std::vector<Letters> rels;
  auto normalize_all = [&rels]() {
    std::set<Letters> seen;
    std::vector<Letters> out;
    for (auto& r : rels) {
      Letters c = cyclic_reduce(r);
      if (c.empty()) continue;
      Letters key = canonical_cyclic(c);
      if (seen.insert(key).second) out.push_back(std::move(c));
    }
    rels = std::move(out);
  };
  for (const auto& r : P.relators) rels.push_back(to_letters(r));
  normalize_all();

  for (;;) {
    // Shortest relator containing a generator exactly once.
    std::size_t best_rel = rels.size();
    int best_gen = 0;
    for (std::size_t i = 0; i < rels.size(); ++i) {
      if (best_rel < rels.size() && rels[i].size() >= rels[best_rel].size()) continue;
      std::map<int, int> count;
      for (int c : rels[i]) ++count[std::abs(c)];
      for (const auto& [g, cnt] : count) {
        if (cnt == 1) {
          best_rel = i;
          best_gen = g;
          break;
        }
      }
    }
    if (best_rel == rels.size()) break;
    const Letters r = rels[best_rel];
    const auto pos = static_cast<std::size_t>(
        std::find_if(r.begin(), r.end(), [&](int c) { return std::abs(c) == best_gen; }) - r.begin());
    const Letters u(r.begin(), r.begin() + static_cast<long>(pos));
    const Letters v(r.begin() + static_cast<long>(pos) + 1, r.end());
    Letters expr;
    if (r[pos] > 0) {
      expr = invert_letters(u);
      const Letters vi = invert_letters(v);
      expr.insert(expr.end(), vi.begin(), vi.end());
    } else {
      expr = v;
      expr.insert(expr.end(), u.begin(), u.end());
    }
    expr = reduce_letters(expr);
    const Letters expr_inv = invert_letters(expr);
    rels.erase(rels.begin() + static_cast<long>(best_rel));
    for (auto& rel : rels) {
      Letters out;
      for (int c : rel) {
        if (c == best_gen) out.insert(out.end(), expr.begin(), expr.end());
        else if (c == -best_gen) out.insert(out.end(), expr_inv.begin(), expr_inv.end());
        else out.push_back(c);
      }
      rel = std::move(out);
    }
    alive[static_cast<std::size_t>(best_gen - 1)] = false;
    normalize_all();
  }

  PresentedSubgroup out;
  out.parent_index = P.parent_index;
  out.transversal = P.transversal;
  out.schreier_generators_before_simplification = P.schreier_generators_before_simplification;
  std::vector<int> remap(k, -1);
  for (std::size_t g = 0; g < k; ++g) {
    if (!alive[g]) continue;
    remap[g] = static_cast<int>(out.generators.size());
    out.generators.push_back(P.generators[g]);
  }
  for (const auto& r : rels) {
    Letters mapped;
    for (int c : r) {
      const int g = remap[static_cast<std::size_t>(std::abs(c) - 1)] + 1;
      mapped.push_back(c < 0 ? -g : g);
    }
    out.relators.push_back(from_letters(mapped));
  }
  return out;
}

PresentedSubgroup gamma1_presentation(std::int64_t m, bool simplified) {
  if (m < 1) throw InputError("gamma1_presentation: m must be positive");
  MembershipPredicate member = [m](const SL2Matrix& M) { return gamma1_membership(M, m); };
  auto P = reidemeister_schreier(member, schreier_transversal(member));
  return simplified ? simplify(P) : P;
}

PresentedSubgroup gamma18_presentation(bool simplified) {
  MembershipPredicate member = [](const SL2Matrix& M) { return gamma18_membership(M); };
  auto P = reidemeister_schreier(member, schreier_transversal(member));
  return simplified ? simplify(P) : P;
}

AbelianGroupStructure abelianization_of(const PresentedSubgroup& P) {
  const std::size_t k = P.generators.size();
  IntMatrix M(k, P.relators.size());
  for (std::size_t j = 0; j < P.relators.size(); ++j)
    for (const auto& s : P.relators[j]) {
      if (s.generator < 0 || static_cast<std::size_t>(s.generator) >= k)
        throw InputError("abelianization_of: relator uses an unknown generator");
      M(static_cast<std::size_t>(s.generator), j) += s.exponent;
    }
  return cokernel(M);
}

bool has_finite_order_relator(const PresentedSubgroup& P) {
  for (const auto& r : P.relators) {
    const Letters l = cyclic_reduce(to_letters(r));
    const std::size_t n = l.size();
    for (std::size_t period = 1; period < n; ++period) {
      if (n % period) continue;
      bool periodic = true;
      for (std::size_t i = period; i < n && periodic; ++i) periodic = l[i] == l[i - period];
      if (periodic) return true;
    }
  }
  return false;
}

TorsionFreeCertificate torsion_free_check_gamma1(std::int64_t m) {
  if (m < 1) throw InputError("torsion_free_check_gamma1: m must be positive");
  // Nontrivial finite-order elements other than -I have trace 0 or +-1.
  for (std::int64_t t : {-1, 0, 1}) {
    if ((((t - 2) % m) + m) % m == 0)
      return {false, "trace " + std::to_string(t) + " = 2 mod " + std::to_string(m)};
  }
  if (gamma1_membership(-SL2Matrix::identity(), m)) return {false, "-I in Gamma_1(" + std::to_string(m) + ")"};
  return {true, "no trace in {-1,0,1} is 2 mod " + std::to_string(m) + " and -I is excluded"};
}

namespace {
void add_block(IntMatrix& M, std::size_t r0, std::size_t c0, const SL2Matrix& B, int sign) {
  M(r0, c0) += sign * B.a;
  M(r0, c0 + 1) += sign * B.b;
  M(r0 + 1, c0) += sign * B.c;
  M(r0 + 1, c0 + 1) += sign * B.d;
}
}  // namespace

IntMatrix cocycle_relation_matrix(const PresentedSubgroup& P) {
  const std::size_t k = P.generators.size();
  IntMatrix J(2 * P.relators.size(), 2 * k);
  for (std::size_t j = 0; j < P.relators.size(); ++j) {
    SL2Matrix prefix;
    for (const auto& s : P.relators[j]) {
      if (s.generator < 0 || static_cast<std::size_t>(s.generator) >= k)
        throw InputError("h1: relator references a generator without a matrix image");
      const auto g = static_cast<std::size_t>(s.generator);
      const SL2Matrix& M = P.generators[g].matrix;
      const SL2Matrix Minv = M.inverse();
      for (long e = 0; e < (s.exponent < 0 ? -s.exponent : s.exponent); ++e) {
        if (s.exponent > 0) {
          add_block(J, 2 * j, 2 * g, prefix, 1);
          prefix = prefix * M;
        } else {
          prefix = prefix * Minv;
          add_block(J, 2 * j, 2 * g, prefix, -1);
        }
      }
    }
    if (!(prefix == SL2Matrix::identity()))
      throw InputError("h1: relator " + std::to_string(j) + " does not hold for the matrix images");
  }
  return J;
}

IntMatrix coboundary_matrix(const PresentedSubgroup& P) {
  const std::size_t k = P.generators.size();
  IntMatrix C(2 * k, 2);
  for (std::size_t i = 0; i < k; ++i) {
    add_block(C, 2 * i, 0, P.generators[i].matrix, 1);
    add_block(C, 2 * i, 0, SL2Matrix::identity(), -1);
  }
  return C;
}

AbelianGroupStructure h1_coefficients_Z2(const PresentedSubgroup& P) {
  if (P.generators.empty() && !P.relators.empty())
    throw InputError("h1: generators carry no matrix images");
  const IntMatrix cocycles = integer_kernel(cocycle_relation_matrix(P));
  return subquotient(cocycles, coboundary_matrix(P));
}

mpq_class euler_characteristic_gamma1(std::int64_t m) {
  mpq_class chi(-jordan_totient(m), 12);
  chi.canonicalize();
  return chi;
}

AbelianGroupStructure h2_sl2z() {
  // Restriction to the common C2 of the amalgam C4 *_{C2} C6.
  const long order_a = 4, order_b = 6, order_c = 2;
  IntMatrix restriction{{1, -1, -order_c}};
  IntMatrix kernel3 = integer_kernel(restriction);
  IntMatrix lattice(2, kernel3.cols());
  for (std::size_t j = 0; j < kernel3.cols(); ++j) {
    lattice(0, j) = kernel3(0, j);
    lattice(1, j) = kernel3(1, j);
  }
  IntMatrix relations{{order_a, 0}, {0, order_b}};
  return subquotient(lattice, relations);
}

}  // namespace multisect::modgroup
