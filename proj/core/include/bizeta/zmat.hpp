#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace bizeta {

/// gmpxx has no long long overloads on LP64; route through long.
inline mpz_class to_mpz(long long v) { return mpz_class(static_cast<long>(v)); }

/// Dense integer matrix with arbitrary-precision entries. Row major.
class ZMat {
 public:
  ZMat() = default;
  ZMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static ZMat identity(int n);
  static ZMat from_rows(const std::vector<std::vector<mpz_class>>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  mpz_class& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const mpz_class& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  std::vector<mpz_class> row(int i) const;
  bool row_is_zero(int i) const;
  bool is_zero() const;

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  void negate_row(int i);
  void negate_col(int j);
  /// row i += c * row j
  void add_row(int i, int j, const mpz_class& c);
  /// col i += c * col j
  void add_col(int i, int j, const mpz_class& c);

  bool operator==(const ZMat& o) const = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<mpz_class> a_;
};

ZMat transpose(const ZMat& m);
ZMat mat_mul(const ZMat& a, const ZMat& b);
ZMat vstack(const ZMat& a, const ZMat& b);
std::vector<mpz_class> vec_mat_mul(const std::vector<mpz_class>& x, const ZMat& m);

struct HnfResult {
  ZMat h;   // row echelon, pivots positive, entries above pivots reduced
  ZMat u;   // unimodular, u * input = h
  int rank;
};

/// Row-style Hermite normal form with transformation matrix.
HnfResult hnf_with_transform(ZMat m);

/// Canonical basis of the row space: HNF with zero rows dropped.
ZMat hnf(const ZMat& m);

/// Canonical basis of { x : x * m = 0 }.
ZMat left_kernel(const ZMat& m);

struct SnfResult {
  ZMat d;                           // diagonal, entries nonnegative
  ZMat u, v, vinv;                  // u * input * v = d, vinv = v^-1
  std::vector<mpz_class> divisors;  // nonzero diagonal entries
};

/// Diagonalization over Z by unimodular row/column operations. The diagonal
/// is not forced into a divisibility chain; callers here only need the
/// multiset of divisors or the all-units case.
SnfResult snf(ZMat m);

/// Solve x * m = b over the integers. Empty when no integral solution exists.
std::optional<std::vector<mpz_class>> solve_left(const ZMat& m,
                                                 const std::vector<mpz_class>& b);

/// Rows completing the saturated matrix `c` (rank = c.rows()) to a basis of
/// Z^{c.cols()}. Throws MathError when `c` is not saturated.
ZMat completion_of_saturated(const ZMat& c);

}  // namespace bizeta
