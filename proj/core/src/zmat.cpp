#include "bizeta/zmat.hpp"

#include <algorithm>
#include <cstdlib>

#include "bizeta/errors.hpp"

namespace bizeta {

ZMat ZMat::identity(int n) {
  ZMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ZMat ZMat::from_rows(const std::vector<std::vector<mpz_class>>& rows, int cols) {
  ZMat m(int(rows.size()), cols);
  for (int i = 0; i < int(rows.size()); ++i) {
    if (int(rows[i].size()) != cols) throw MathError("from_rows: ragged row");
    for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::vector<mpz_class> ZMat::row(int i) const {
  std::vector<mpz_class> r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

bool ZMat::row_is_zero(int i) const {
  for (int j = 0; j < cols_; ++j)
    if (at(i, j) != 0) return false;
  return true;
}

bool ZMat::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

void ZMat::swap_rows(int i, int j) {
  if (i == j) return;
  for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void ZMat::swap_cols(int i, int j) {
  if (i == j) return;
  for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void ZMat::negate_row(int i) {
  for (int c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

void ZMat::negate_col(int j) {
  for (int r = 0; r < rows_; ++r) at(r, j) = -at(r, j);
}

void ZMat::add_row(int i, int j, const mpz_class& c) {
  for (int k = 0; k < cols_; ++k) at(i, k) += c * at(j, k);
}

void ZMat::add_col(int i, int j, const mpz_class& c) {
  for (int k = 0; k < rows_; ++k) at(k, i) += c * at(k, j);
}

ZMat transpose(const ZMat& m) {
  ZMat t(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
  return t;
}

ZMat mat_mul(const ZMat& a, const ZMat& b) {
  if (a.cols() != b.rows()) throw MathError("mat_mul: shape mismatch");
  ZMat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

ZMat vstack(const ZMat& a, const ZMat& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw MathError("vstack: shape mismatch");
  ZMat c(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) c.at(a.rows() + i, j) = b.at(i, j);
  return c;
}

std::vector<mpz_class> vec_mat_mul(const std::vector<mpz_class>& x, const ZMat& m) {
  if (int(x.size()) != m.rows()) throw MathError("vec_mat_mul: shape mismatch");
  std::vector<mpz_class> r(m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < m.cols(); ++j) r[j] += x[i] * m.at(i, j);
  }
  return r;
}

HnfResult hnf_with_transform(ZMat m) {
  const int rows = m.rows(), cols = m.cols();
  ZMat u = ZMat::identity(rows);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    // gcd-eliminate column c below row r
    for (;;) {
      int piv = -1;
      for (int i = r; i < rows; ++i) {
        if (m.at(i, c) == 0) continue;
        if (piv < 0 || cmp(abs(m.at(i, c)), abs(m.at(piv, c))) < 0) piv = i;
      }
      if (piv < 0) break;
      m.swap_rows(r, piv);
      u.swap_rows(r, piv);
      bool clean = true;
      for (int i = r + 1; i < rows; ++i) {
        if (m.at(i, c) == 0) continue;
        mpz_class q = m.at(i, c) / m.at(r, c);  // truncated division
        if (q != 0) {
          m.add_row(i, r, -q);
          u.add_row(i, r, -q);
        }
        if (m.at(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m.at(r, c) == 0) continue;
    if (m.at(r, c) < 0) {
      m.negate_row(r);
      u.negate_row(r);
    }
    // reduce entries above the pivot into [0, pivot)
    for (int i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), m.at(i, c).get_mpz_t(), m.at(r, c).get_mpz_t());
      if (q != 0) {
        m.add_row(i, r, -q);
        u.add_row(i, r, -q);
      }
    }
    ++r;
  }
  return HnfResult{std::move(m), std::move(u), r};
}

ZMat hnf(const ZMat& m) {
  HnfResult res = hnf_with_transform(m);
  ZMat out(res.rank, m.cols());
  for (int i = 0; i < res.rank; ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(i, j) = res.h.at(i, j);
  return out;
}

ZMat left_kernel(const ZMat& m) {
  HnfResult res = hnf_with_transform(m);
  ZMat ker(m.rows() - res.rank, m.rows());
  for (int i = res.rank; i < m.rows(); ++i)
    for (int j = 0; j < m.rows(); ++j) ker.at(i - res.rank, j) = res.u.at(i, j);
  return hnf(ker);
}

SnfResult snf(ZMat m) {
  const int rows = m.rows(), cols = m.cols();
  ZMat u = ZMat::identity(rows);
  ZMat v = ZMat::identity(cols);
  ZMat vinv = ZMat::identity(cols);
  const int n = std::min(rows, cols);
  for (int s = 0; s < n; ++s) {
    for (;;) {
      int pi = -1, pj = -1;
      for (int i = s; i < rows; ++i)
        for (int j = s; j < cols; ++j) {
          if (m.at(i, j) == 0) continue;
          if (pi < 0 || cmp(abs(m.at(i, j)), abs(m.at(pi, pj))) < 0) {
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) break;  // submatrix is zero
      m.swap_rows(s, pi);
      u.swap_rows(s, pi);
      m.swap_cols(s, pj);
      v.swap_cols(s, pj);
      vinv.swap_rows(s, pj);
      bool clean = true;
      for (int i = s + 1; i < rows; ++i) {
        if (m.at(i, s) == 0) continue;
        mpz_class q = m.at(i, s) / m.at(s, s);
        if (q != 0) {
          m.add_row(i, s, -q);
          u.add_row(i, s, -q);
        }
        if (m.at(i, s) != 0) clean = false;
      }
      for (int j = s + 1; j < cols; ++j) {
        if (m.at(s, j) == 0) continue;
        mpz_class q = m.at(s, j) / m.at(s, s);
        if (q != 0) {
          m.add_col(j, s, -q);
          v.add_col(j, s, -q);
          vinv.add_row(s, j, q);  // inverse column op, applied on the left
        }
        if (m.at(s, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m.at(s, s) < 0) {
      m.negate_row(s);
      u.negate_row(s);
    }
  }
  SnfResult res{std::move(m), std::move(u), std::move(v), std::move(vinv), {}};
  for (int s = 0; s < n; ++s)
    if (res.d.at(s, s) != 0) res.divisors.push_back(res.d.at(s, s));
  return res;
}

std::optional<std::vector<mpz_class>> solve_left(const ZMat& m,
                                                 const std::vector<mpz_class>& b) {
  if (int(b.size()) != m.cols()) throw MathError("solve_left: shape mismatch");
  HnfResult res = hnf_with_transform(m);
  // Solve y * h = b by sweeping pivots left to right, then x = y * u.
  std::vector<int> pivot_col(res.rank);
  for (int i = 0; i < res.rank; ++i) {
    int c = 0;
    while (c < res.h.cols() && res.h.at(i, c) == 0) ++c;
    pivot_col[i] = c;
  }
  std::vector<mpz_class> y(m.rows());
  std::vector<mpz_class> rem = b;
  for (int i = 0; i < res.rank; ++i) {
    const int c = pivot_col[i];
    if (rem[c] % res.h.at(i, c) != 0) return std::nullopt;
    y[i] = rem[c] / res.h.at(i, c);
    if (y[i] != 0)
      for (int j = 0; j < res.h.cols(); ++j) rem[j] -= y[i] * res.h.at(i, j);
  }
  for (const auto& x : rem)
    if (x != 0) return std::nullopt;
  return vec_mat_mul(y, res.u);
}

ZMat completion_of_saturated(const ZMat& c) {
  const int s = c.rows(), n = c.cols();
  SnfResult res = snf(c);
  for (int i = 0; i < s; ++i)
    if (res.d.at(i, i) != 1)
      throw MathError("completion_of_saturated: input is not saturated");
  // u*c*v = (I | 0), so the first s rows of v^-1 span the row space of c and
  // the remaining rows complete them to a basis of Z^n.
  ZMat out(n - s, n);
  for (int i = s; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i - s, j) = res.vinv.at(i, j);
  return out;
}

}  // namespace bizeta
