#include "bizeta/commutators.hpp"

#include <algorithm>
#include <map>

#include "bizeta/errors.hpp"

namespace bizeta {

std::pair<LinearFormMatrix, LinearFormMatrix> commutator_matrices(const LatticeProfile& P) {
  LinearFormMatrix A;
  A.kind = LinearFormMatrix::Kind::A;
  A.rows = P.a;
  A.cols = P.b;
  A.nvars = P.a;
  A.entry.assign(size_t(P.a) * P.b, std::vector<long long>(P.a, 0));
  for (int i = 0; i < P.a; ++i)
    for (int k = 0; k < P.b; ++k)
      for (int j = 0; j < P.a; ++j) A.form(i, k)[j] = P.lambda_at(i, j, k);

  LinearFormMatrix B;
  B.kind = LinearFormMatrix::Kind::B;
  B.rows = P.a;
  B.cols = P.a;
  B.nvars = P.b;
  B.entry.assign(size_t(P.a) * P.a, std::vector<long long>(P.b, 0));
  for (int i = 0; i < P.a; ++i)
    for (int j = 0; j < P.a; ++j)
      for (int k = 0; k < P.b; ++k) B.form(i, j)[k] = P.lambda_at(i, j, k);

  return {std::move(A), std::move(B)};
}

RMat evaluate(const LinearFormMatrix& m, const std::vector<long long>& point,
              const ResidueParams& rp) {
  if (int(point.size()) != m.nvars)
    throw MathError("evaluate: point dimension differs from the number of variables");
  RMat out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      const auto& c = m.form(i, j);
      long long acc = 0;
      for (int v = 0; v < m.nvars; ++v)
        if (c[v] != 0) acc = (acc + rp.reduce(c[v]) * point[v]) % rp.pn;
      out.at(i, j) = rp.reduce(acc);
    }
  return out;
}

namespace {

// sparse multivariate polynomial over Z, exponent vector keyed
using MPoly = std::map<std::vector<int>, mpz_class>;

MPoly form_poly(const std::vector<long long>& coeff) {
  MPoly p;
  for (int v = 0; v < int(coeff.size()); ++v)
    if (coeff[v] != 0) {
      std::vector<int> e(coeff.size(), 0);
      e[v] = 1;
      p[e] = to_mpz(coeff[v]);
    }
  return p;
}

MPoly mpoly_mul(const MPoly& a, const MPoly& b) {
  MPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto& c = out[e];
      c += ca * cb;
      if (c == 0) out.erase(e);
    }
  return out;
}

void mpoly_add_scaled(MPoly& a, const MPoly& b, int sign) {
  for (const auto& [e, c] : b) {
    auto& t = a[e];
    t += sign > 0 ? c : -c;
    if (t == 0) a.erase(e);
  }
}

// symbolic determinant of the submatrix (rows, cols) by Laplace expansion
MPoly symbolic_minor(const LinearFormMatrix& m, const std::vector<int>& rows,
                     const std::vector<int>& cols) {
  if (rows.empty()) return MPoly{{std::vector<int>(m.nvars, 0), mpz_class(1)}};
  MPoly det;
  for (size_t t = 0; t < cols.size(); ++t) {
    const auto& f = m.form(rows[0], cols[t]);
    if (std::all_of(f.begin(), f.end(), [](long long c) { return c == 0; })) continue;
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    std::vector<int> sub_cols = cols;
    sub_cols.erase(sub_cols.begin() + t);
    const MPoly cofactor = mpoly_mul(form_poly(f), symbolic_minor(m, sub_rows, sub_cols));
    mpoly_add_scaled(det, cofactor, (t % 2 == 0) ? 1 : -1);
  }
  return det;
}

// rank over Q of the matrix evaluated at an integer point (exact elimination)
int rank_at_point(const LinearFormMatrix& m, const std::vector<long long>& pt) {
  std::vector<std::vector<mpq_class>> w(m.rows, std::vector<mpq_class>(m.cols));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      mpz_class acc = 0;
      for (int v = 0; v < m.nvars; ++v) acc += to_mpz(m.form(i, j)[v]) * to_mpz(pt[v]);
      w[i][j] = acc;
    }
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int piv = -1;
    for (int i = rank; i < m.rows; ++i)
      if (w[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(w[rank], w[piv]);
    for (int i = rank + 1; i < m.rows; ++i) {
      if (w[i][c] == 0) continue;
      const mpq_class f = w[i][c] / w[rank][c];
      for (int j = c; j < m.cols; ++j) w[i][j] -= f * w[rank][j];
    }
    ++rank;
  }
  return rank;
}

bool any_minor_nonzero(const LinearFormMatrix& m, int s) {
  std::vector<int> rows(s), cols(s);
  std::vector<bool> rsel(m.rows, false), csel(m.cols, false);
  std::fill(rsel.begin(), rsel.begin() + s, true);
  std::fill(csel.begin(), csel.begin() + s, true);
  // iterate over all row and column subsets of size s
  std::vector<std::vector<int>> row_sets, col_sets;
  auto collect = [](int n, int s_) {
    std::vector<std::vector<int>> sets;
    std::vector<int> idx(s_);
    for (int i = 0; i < s_; ++i) idx[i] = i;
    for (;;) {
      sets.push_back(idx);
      int i = s_ - 1;
      while (i >= 0 && idx[i] == n - s_ + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s_; ++j) idx[j] = idx[j - 1] + 1;
    }
    return sets;
  };
  row_sets = collect(m.rows, s);
  col_sets = collect(m.cols, s);
  for (const auto& rs : row_sets)
    for (const auto& cs : col_sets)
      if (!symbolic_minor(m, rs, cs).empty()) return true;
  return false;
}

}  // namespace

GenericRank generic_rank(const LinearFormMatrix& m) {
  const int nmax = std::min(m.rows, m.cols);
  if (nmax == 0 || m.nvars == 0) return GenericRank{0, 0};

  // screening: exact ranks at deterministic integer points
  int best = 0;
  std::vector<long long> witness;
  for (long long t = 1; t <= 2 * nmax + 3 && best < nmax; ++t) {
    std::vector<long long> pt(m.nvars);
    long long v = 1;
    for (int i = 0; i < m.nvars; ++i) {
      v *= t + 1;  // coordinates (t+1)^1, ..., (t+1)^nvars
      pt[i] = v;
    }
    const int rk = rank_at_point(m, pt);
    if (rk > best) {
      best = rk;
      witness = pt;
    }
  }
  // unit vectors and sums of unit vectors as additional probes
  for (int mask = 1; mask < (1 << std::min(m.nvars, 12)) && best < nmax; ++mask) {
    std::vector<long long> pt(m.nvars, 0);
    for (int i = 0; i < m.nvars && i < 12; ++i)
      if (mask & (1 << i)) pt[i] = 1;
    const int rk = rank_at_point(m, pt);
    if (rk > best) {
      best = rk;
      witness = pt;
    }
  }

  // the claimed rank must be certified symbolically: one nonzero minor at
  // size `best`, and all minors of every larger size identically zero
  int u = best;
  for (int s = best + 1; s <= nmax; ++s) {
    if (any_minor_nonzero(m, s))
      u = s;  // screening missed a rank witness; the symbolic check is authoritative
    else
      break;
  }
  if (u > 0 && !any_minor_nonzero(m, u))
    throw MathError("generic_rank: certification failure, no nonzero minor at claimed size");

  GenericRank g;
  g.u = u;
  if (m.kind == LinearFormMatrix::Kind::B) {
    if (u % 2 != 0)
      throw MathError("generic_rank: antisymmetric matrix with odd generic rank");
    g.u_half = u / 2;
  }
  return g;
}

}  // namespace bizeta
