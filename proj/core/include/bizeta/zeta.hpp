#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bizeta/counting.hpp"

namespace bizeta {

/// Truncation of the bivariate series sum coeff(N, i) T1^i T2^N where
/// T1 = q^{-s1}, T2 = q^{-s2} and q = p. Zero coefficients are omitted.
struct TruncatedBivariateSeries {
  long long p = 0;
  int nmax = 0;
  CountVector::Kind kind = CountVector::Kind::Irr;
  std::map<std::pair<int, int>, mpz_class> coeff;  // (N, i) -> value

  mpz_class at(int N, int i) const;
  bool operator==(const TruncatedBivariateSeries& o) const {
    return p == o.p && nmax == o.nmax && coeff == o.coeff;
  }
};

/// Levelwise truncation of the Poincare series: coefficient at (N, s) counts
/// primitive points of level N whose divisor type sums to s.
struct PoincareTruncation {
  LinearFormMatrix::Kind kind;
  long long p = 0;
  int nmax = 0;
  int tuple_len = 0;
  std::map<std::pair<int, int>, mpz_class> coeff;  // (N, sum m) -> N^o count
};

TruncatedBivariateSeries bivariate_series(const LatticeProfile& P, long long p, int nmax,
                                          CountVector::Kind kind,
                                          const EnumOptions& opts = {});

/// T1 := 1 specialization: b(N) = sum_i coeff(N, i) = k(G_N).
std::vector<mpz_class> class_number_series(const TruncatedBivariateSeries& zs);

/// Twist specialization for class-2 lattices by coefficient stabilization:
/// a_i(N) = coeff(N, i) p^{2i - rN} is reported once witnessed equal at two
/// consecutive levels; unstabilized entries are flagged.
struct TwistTruncation {
  long long p = 0;
  int nmax = 0;
  int free_rank_r = 0;
  std::vector<mpq_class> values;   // a_i(nmax) for i = 0..u_B*nmax
  std::vector<bool> stabilized;    // a_i(nmax - 1) == a_i(nmax)
  bool all_stabilized() const;
};
TwistTruncation twist_coefficients(const LatticeProfile& P, long long p, int nmax,
                                   const EnumOptions& opts = {});

PoincareTruncation poincare_truncation(const LinearFormMatrix& m, int tuple_len,
                                       long long p, int nmax,
                                       const EnumOptions& opts = {});

/// Coefficientwise verification of the resummation identity
/// (1 - S) * LHS = 1 + sum_{N >= 1, m} N^o_{N,R,m} S^N U^{uN - |m|}
/// in the formal symbols S = q^{-s}, U = q^{-t}, where the left side is
/// assembled from shifted primitive counts and the right side from the
/// Poincare truncation.
struct SumlemaReport {
  bool ok = true;
  int level = -1, index = -1;   // first mismatch when !ok
  mpz_class lhs, rhs;
};
SumlemaReport sumlema_check(const LatticeProfile& P, long long p, int nmax,
                            CountVector::Kind kind, const EnumOptions& opts = {});

/// Series document (JSON text with decimal-string coefficients).
std::string series_to_text(const TruncatedBivariateSeries& zs,
                           const std::string& lattice_name);

}  // namespace bizeta
