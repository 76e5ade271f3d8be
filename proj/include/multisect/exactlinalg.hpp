#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace multisect::exactlinalg {

using BigInt = mpz_class;

// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& other) const;
  IntMatrix operator*(const BigInt& scalar) const;
  bool operator==(const IntMatrix& other) const;

  IntMatrix transpose() const;
  // Columns [first, last) as a new matrix.
  IntMatrix columns(std::size_t first, std::size_t last) const;
  // Horizontal concatenation; row counts must agree.
  IntMatrix hconcat(const IntMatrix& right) const;
  bool is_diagonal() const;
  bool is_zero() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

// Free rank plus invariant factors d1 | d2 | ... with every di >= 2.
struct AbelianGroupStructure {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  // Order of the torsion subgroup.
  BigInt torsion_order() const;
  bool operator==(const AbelianGroupStructure& other) const = default;
  // "0", "Z/12", "Z^2 + Z/2 + Z/4", ...
  std::string to_string() const;
};

struct SmithDecomposition {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal with divisibility chain, nonnegative
  IntMatrix V;  // cols x cols, unimodular
  std::size_t rank = 0;
};

// U * M * V == D exactly. Pivots are chosen with smallest absolute value.
SmithDecomposition smith_normal_form(const IntMatrix& M);

// Z^rows / (column span of M).
AbelianGroupStructure cokernel(const IntMatrix& M);

// Basis (as columns) of the integer kernel {x : M x = 0}.
IntMatrix integer_kernel(const IntMatrix& M);

// Solves M X = B over the integers; throws InconsistentInputError when some
// column of B is not in the integer column span of M.
IntMatrix solve_integer(const IntMatrix& M, const IntMatrix& B);

// (column span of Z) / (column span of B). Requires span(B) inside span(Z).
AbelianGroupStructure subquotient(const IntMatrix& Z_generators, const IntMatrix& B_generators);

// Exact determinant of a square matrix (fraction-free elimination).
BigInt determinant(const IntMatrix& M);

}  // namespace multisect::exactlinalg
