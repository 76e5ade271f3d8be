#include "multisect/exactlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "multisect/errors.hpp"

namespace multisect::exactlinalg {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, BigInt(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InputError("IntMatrix: ragged initializer");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw InputError("IntMatrix: dimension mismatch in product");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  }
  return out;
}

IntMatrix IntMatrix::operator*(const BigInt& scalar) const {
  IntMatrix out = *this;
  for (auto& v : out.data_) v *= scalar;
  return out;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

IntMatrix IntMatrix::columns(std::size_t first, std::size_t last) const {
  IntMatrix out(rows_, last - first);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = first; j < last; ++j) out(i, j - first) = (*this)(i, j);
  return out;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& right) const {
  if (rows_ != right.rows_) throw InputError("IntMatrix: row mismatch in hconcat");
  IntMatrix out(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) out(i, cols_ + j) = right(i, j);
  }
  return out;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& v) { return v == 0; });
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << (*this)(i, j).get_str();
    }
  }
  os << ']';
  return os.str();
}

BigInt AbelianGroupStructure::torsion_order() const {
  BigInt order = 1;
  for (const auto& d : torsion) order *= d;
  return order;
}

std::string AbelianGroupStructure::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << 'Z';
    if (free_rank > 1) os << '^' << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

namespace {

void swap_rows(IntMatrix& A, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < A.cols(); ++c) std::swap(A(i, c), A(j, c));
}

void swap_cols(IntMatrix& A, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < A.rows(); ++r) std::swap(A(r, i), A(r, j));
}

// row_i -= q * row_j
void row_axpy(IntMatrix& A, std::size_t i, std::size_t j, const BigInt& q) {
  for (std::size_t c = 0; c < A.cols(); ++c)
    if (A(j, c) != 0) A(i, c) -= q * A(j, c);
}

// col_i -= q * col_j
void col_axpy(IntMatrix& A, std::size_t i, std::size_t j, const BigInt& q) {
  for (std::size_t r = 0; r < A.rows(); ++r)
    if (A(r, j) != 0) A(r, i) -= q * A(r, j);
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  IntMatrix A = M;
  IntMatrix U = IntMatrix::identity(m);
  IntMatrix V = IntMatrix::identity(n);
  std::size_t t = 0;

  while (t < m && t < n) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pr = t, pc = t;
    BigInt best;
    for (std::size_t i = t; i < m; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        if (A(i, j) == 0) continue;
        BigInt a = abs(A(i, j));
        if (!found || a < best) {
          best = a;
          pr = i;
          pc = j;
          found = true;
        }
      }
    }
    if (!found) break;
    swap_rows(A, t, pr);
    swap_rows(U, t, pr);
    swap_cols(A, t, pc);
    swap_cols(V, t, pc);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A(i, t) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
        row_axpy(A, i, t, q);
        row_axpy(U, i, t, q);
        if (A(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A(t, j) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
        col_axpy(A, j, t, q);
        col_axpy(V, j, t, q);
        if (A(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // A remainder survived: move the smallest entry of row/column t to the pivot.
        std::size_t br = t, bc = t;
        BigInt b = abs(A(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (A(i, t) != 0 && abs(A(i, t)) < b) {
            b = abs(A(i, t));
            br = i;
            bc = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (A(t, j) != 0 && abs(A(t, j)) < b) {
            b = abs(A(t, j));
            br = t;
            bc = j;
          }
        swap_rows(A, t, br);
        swap_rows(U, t, br);
        swap_cols(A, t, bc);
        swap_cols(V, t, bc);
        continue;
      }
      // Divisibility: fold any offending row into row t and reduce again.
      bool folded = false;
      for (std::size_t i = t + 1; i < m && !folded; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t()) == 0) {
            row_axpy(A, t, i, BigInt(-1));
            row_axpy(U, t, i, BigInt(-1));
            folded = true;
            break;
          }
        }
      }
      if (!folded) break;
    }
    if (A(t, t) < 0) {
      for (std::size_t c = 0; c < n; ++c) A(t, c) = -A(t, c);
      for (std::size_t c = 0; c < m; ++c) U(t, c) = -U(t, c);
    }
    ++t;
  }
  return {std::move(U), std::move(A), std::move(V), t};
}

AbelianGroupStructure cokernel(const IntMatrix& M) {
  const auto snf = smith_normal_form(M);
  AbelianGroupStructure g;
  g.free_rank = M.rows() - snf.rank;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.D(i, i) > 1) g.torsion.push_back(snf.D(i, i));
  return g;
}

IntMatrix integer_kernel(const IntMatrix& M) {
  const auto snf = smith_normal_form(M);
  return snf.V.columns(snf.rank, M.cols());
}

IntMatrix solve_integer(const IntMatrix& M, const IntMatrix& B) {
  if (B.rows() != M.rows()) throw InputError("solve_integer: row mismatch");
  const auto snf = smith_normal_form(M);
  const IntMatrix UB = snf.U * B;
  IntMatrix Y(M.cols(), B.cols());
  for (std::size_t j = 0; j < B.cols(); ++j) {
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i < snf.rank) {
        const BigInt& d = snf.D(i, i);
        if (mpz_divisible_p(UB(i, j).get_mpz_t(), d.get_mpz_t()) == 0)
          throw InconsistentInputError("solve_integer: column " + std::to_string(j) +
                                       " is not in the integer span");
        mpz_divexact(Y(i, j).get_mpz_t(), UB(i, j).get_mpz_t(), d.get_mpz_t());
      } else if (UB(i, j) != 0) {
        throw InconsistentInputError("solve_integer: column " + std::to_string(j) +
                                     " is not in the rational span");
      }
    }
  }
  return snf.V * Y;
}

AbelianGroupStructure subquotient(const IntMatrix& Z, const IntMatrix& B) {
  if (Z.rows() != B.rows()) throw InputError("subquotient: ambient dimensions differ");
  const auto snf = smith_normal_form(Z);
  const IntMatrix UB = snf.U * B;
  // Coordinates of B in the basis {d_i * U^-1 e_i} of span(Z).
  IntMatrix C(snf.rank, B.cols());
  for (std::size_t j = 0; j < B.cols(); ++j) {
    for (std::size_t i = 0; i < Z.rows(); ++i) {
      if (i < snf.rank) {
        const BigInt& d = snf.D(i, i);
        if (mpz_divisible_p(UB(i, j).get_mpz_t(), d.get_mpz_t()) == 0)
          throw InconsistentInputError("subquotient: B generator " + std::to_string(j) +
                                       " is not in span(Z)");
        mpz_divexact(C(i, j).get_mpz_t(), UB(i, j).get_mpz_t(), d.get_mpz_t());
      } else if (UB(i, j) != 0) {
        throw InconsistentInputError("subquotient: B generator " + std::to_string(j) +
                                     " is not in span(Z)");
      }
    }
  }
  return cokernel(C);
}

BigInt determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw InputError("determinant: matrix not square");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  IntMatrix A = M;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && A(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(A, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt v = A(i, j) * A(k, k) - A(i, k) * A(k, j);
        mpz_divexact(A(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      A(i, k) = 0;
    }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

}  // namespace multisect::exactlinalg
