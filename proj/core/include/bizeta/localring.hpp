#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace bizeta {

/// The truncated local ring Z/p^N. Valuations are clamped at N, so the
/// valuation of 0 is N by convention.
struct ResidueParams {
  long long p = 2;
  int N = 0;
  long long pn = 1;  // p^N

  ResidueParams(long long p_, int N_);

  long long pow_p(int e) const;          // p^e for 0 <= e <= N
  long long reduce(long long x) const;   // representative in [0, pn)
  long long reduce(const mpz_class& x) const;
  long long inverse_unit(long long x) const;  // x a unit mod p^N
};

bool is_prime(long long p);

/// Clamped p-adic valuation of a residue class; valuation(0) = N.
int valuation(long long x, const ResidueParams& rp);

/// Matrix over Z/p^N, entries kept in [0, pn). Row major.
struct RMat {
  int rows = 0, cols = 0;
  std::vector<long long> a;

  RMat() = default;
  RMat(int rows_, int cols_) : rows(rows_), cols(cols_), a(size_t(rows_) * cols_) {}
  long long& at(int i, int j) { return a[size_t(i) * cols + j]; }
  long long at(int i, int j) const { return a[size_t(i) * cols + j]; }
};

/// Elementary divisor type: the nondecreasing tuple (m_1, ..., m_eps),
/// eps = min(rows, cols), such that m is equivalent over Z/p^N to
/// diag(p^{m_1}, ..., p^{m_eps}). Pivots on a minimal-valuation entry,
/// breaking ties toward the smallest (row, col).
std::vector<int> elementary_divisor_type(RMat m, const ResidueParams& rp);

/// First `u` entries of a full type; the dropped tail must be all N
/// (guaranteed when `u` is the generic rank of the evaluated matrix).
std::vector<int> truncate_type(const std::vector<int>& full, int u,
                               const ResidueParams& rp);

/// Half-length divisor type of an antisymmetric matrix. Entries below N
/// must pair up; the result is the deduplicated pair sequence truncated to
/// u_half entries, padded with N.
std::vector<int> paired_type(const std::vector<int>& full, int u_half,
                             const ResidueParams& rp);

}  // namespace bizeta
