#include "multisect/verify/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "multisect/errors.hpp"

namespace multisect::verify {

BigInt rational_determinant(const IntMatrix& M) {
  const std::size_t n = M.rows();
  if (M.cols() != n) throw InputError("rational_determinant: matrix not square");
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = M(i, j);
  mpq_class det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      mpq_class f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det.get_num();
}

namespace {

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  for (;;) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint64_t mod_u(const BigInt& x, std::uint64_t N) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), N);
  return r.get_ui();
}

}  // namespace

AbelianGroupStructure cokernel_by_minors(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  std::vector<BigInt> d{1};
  for (std::size_t k = 1; k <= std::min(m, n); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(m, k, rs);
    subsets(n, k, cs);
    BigInt g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        IntMatrix minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) minor(i, j) = M(r[i], c[j]);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), rational_determinant(minor).get_mpz_t());
      }
    if (g == 0) break;
    d.push_back(g);
  }
  AbelianGroupStructure out;
  const std::size_t rank = d.size() - 1;
  out.free_rank = m - rank;
  for (std::size_t k = 1; k <= rank; ++k) {
    BigInt f = d[k] / d[k - 1];
    if (f > 1) out.torsion.push_back(f);
  }
  return out;
}

std::uint64_t count_kernel_mod(const IntMatrix& M, std::uint64_t N) {
  const std::size_t n = M.cols();
  const std::uint64_t total = ipow(N, n);
  std::vector<std::vector<std::uint64_t>> a(M.rows(), std::vector<std::uint64_t>(n));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = mod_u(M(i, j), N);
  std::vector<std::uint64_t> x(n, 0);
  std::uint64_t count = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = t % N;
      t /= N;
    }
    bool zero = true;
    for (std::size_t i = 0; i < a.size() && zero; ++i) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < n; ++j) s += a[i][j] * x[j];
      zero = s % N == 0;
    }
    if (zero) ++count;
  }
  return count;
}

std::uint64_t count_image_mod(const IntMatrix& M, std::uint64_t N) {
  const std::size_t n = M.cols();
  const std::uint64_t total = ipow(N, n);
  std::unordered_set<std::string> seen;
  std::vector<std::uint64_t> x(n, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = t % N;
      t /= N;
    }
    std::string key;
    for (std::size_t i = 0; i < M.rows(); ++i) {
      BigInt s = 0;
      for (std::size_t j = 0; j < n; ++j) s += M(i, j) * static_cast<unsigned long>(x[j]);
      key += std::to_string(mod_u(s, N)) + ",";
    }
    seen.insert(key);
  }
  return seen.size();
}

std::uint64_t predicted_kernel_mod(const IntMatrix& M, std::uint64_t N) {
  const auto snf = exactlinalg::smith_normal_form(M);
  std::uint64_t count = ipow(N, M.cols() - snf.rank);
  for (std::size_t i = 0; i < snf.rank; ++i) {
    BigInt g;
    mpz_gcd_ui(g.get_mpz_t(), snf.D(i, i).get_mpz_t(), N);
    count *= g.get_ui();
  }
  return count;
}

std::uint64_t predicted_image_mod(const IntMatrix& M, std::uint64_t N) {
  return ipow(N, M.cols()) / predicted_kernel_mod(M, N);
}

std::vector<std::uint64_t> torsion_profile_by_enumeration(const IntMatrix& L, std::uint64_t kmax) {
  const std::size_t n = L.rows();
  if (L.cols() != n) throw InputError("torsion_profile_by_enumeration: lattice matrix not square");
  BigInt det = abs(rational_determinant(L));
  if (det == 0) throw InputError("torsion_profile_by_enumeration: singular lattice");
  const std::uint64_t D = det.get_ui();
  const std::uint64_t total = ipow(D, n);
  auto encode = [&](const std::vector<std::uint64_t>& v) {
    std::uint64_t idx = 0;
    for (std::size_t j = n; j-- > 0;) idx = idx * D + v[j];
    return idx;
  };
  auto decode = [&](std::uint64_t idx) {
    std::vector<std::uint64_t> v(n);
    for (std::size_t j = 0; j < n; ++j) {
      v[j] = idx % D;
      idx /= D;
    }
    return v;
  };
  std::vector<std::vector<std::uint64_t>> gens;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::uint64_t> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = mod_u(L(i, c), D);
    gens.push_back(g);
  }
  // Closure of the column span inside (Z/D)^n.
  std::vector<char> in_span(total, 0);
  std::vector<std::uint64_t> frontier{0};
  in_span[0] = 1;
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t idx : frontier) {
      auto v = decode(idx);
      for (const auto& g : gens) {
        std::vector<std::uint64_t> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = (v[i] + g[i]) % D;
        const std::uint64_t e = encode(w);
        if (!in_span[e]) {
          in_span[e] = 1;
          next.push_back(e);
        }
      }
    }
    frontier = std::move(next);
  }
  const std::uint64_t span_size = static_cast<std::uint64_t>(std::count(in_span.begin(), in_span.end(), 1));
  std::vector<std::uint64_t> profile;
  for (std::uint64_t k = 1; k <= kmax; ++k) {
    std::uint64_t hits = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      auto v = decode(idx);
      for (auto& x : v) x = (x * k) % D;
      if (in_span[encode(v)]) ++hits;
    }
    profile.push_back(hits / span_size);
  }
  return profile;
}

std::vector<std::uint64_t> torsion_profile(const AbelianGroupStructure& G, std::uint64_t kmax) {
  if (G.free_rank) throw InputError("torsion_profile: group is infinite");
  std::vector<std::uint64_t> profile;
  for (std::uint64_t k = 1; k <= kmax; ++k) {
    std::uint64_t c = 1;
    for (const auto& d : G.torsion) {
      BigInt g;
      mpz_gcd_ui(g.get_mpz_t(), d.get_mpz_t(), k);
      c *= g.get_ui();
    }
    profile.push_back(c);
  }
  return profile;
}

}  // namespace multisect::verify
