#include "bizeta/localring.hpp"

#include <limits>

#include "bizeta/errors.hpp"

namespace bizeta {

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

ResidueParams::ResidueParams(long long p_, int N_) : p(p_), N(N_) {
  // products of two residues must fit in a long long
  constexpr long long kMaxModulus = 3037000499LL;  // floor(sqrt(2^63 - 1))
  if (p < 2 || p > kMaxModulus)
    throw ValidationError("p = " + std::to_string(p) + " is out of the supported range");
  if (!is_prime(p)) throw ValidationError("p = " + std::to_string(p) + " is not prime");
  if (N < 0) throw ValidationError("level N must be nonnegative");
  pn = 1;
  for (int i = 0; i < N; ++i) {
    if (pn > kMaxModulus / p) throw CeilingError("p^N exceeds the supported modulus range");
    pn *= p;
  }
}

long long ResidueParams::pow_p(int e) const {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

long long ResidueParams::reduce(long long x) const {
  long long r = x % pn;
  return r < 0 ? r + pn : r;
}

long long ResidueParams::reduce(const mpz_class& x) const {
  mpz_class r = x % mpz_class(static_cast<long>(pn));
  if (r < 0) r += static_cast<long>(pn);
  return r.get_si();
}

long long ResidueParams::inverse_unit(long long x) const {
  x = reduce(x);
  if (x % p == 0) throw MathError("inverse of a non-unit mod p^N");
  // extended euclid against pn
  long long a = x, b = pn, s0 = 1, s1 = 0;
  while (b != 0) {
    long long q = a / b;
    long long t = a - q * b;
    a = b;
    b = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return reduce(s0);
}

int valuation(long long x, const ResidueParams& rp) {
  x = rp.reduce(x);
  if (x == 0) return rp.N;
  int v = 0;
  while (x % rp.p == 0) {
    x /= rp.p;
    ++v;
  }
  return v;
}

std::vector<int> elementary_divisor_type(RMat m, const ResidueParams& rp) {
  const int eps = std::min(m.rows, m.cols);
  std::vector<int> type;
  type.reserve(eps);
  for (int s = 0; s < eps; ++s) {
    int best_i = -1, best_j = -1, best_v = rp.N;
    for (int i = s; i < m.rows; ++i)
      for (int j = s; j < m.cols; ++j) {
        const int v = valuation(m.at(i, j), rp);
        if (v < best_v) {
          best_v = v;
          best_i = i;
          best_j = j;
        }
      }
    if (best_i < 0) break;  // remaining submatrix is 0 mod p^N
    // move pivot to (s, s)
    if (best_i != s)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(s, j), m.at(best_i, j));
    if (best_j != s)
      for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, s), m.at(i, best_j));
    // pivot = p^v * unit; scale the row so the pivot becomes p^v
    const long long pv = rp.pow_p(best_v);
    const long long unit_inv = rp.inverse_unit(m.at(s, s) / pv);
    for (int j = s; j < m.cols; ++j)
      m.at(s, j) = rp.reduce(m.at(s, j) % rp.pn * unit_inv % rp.pn);
    // clear column s below and row s to the right; all entries have
    // valuation >= v, so the integer quotients are exact
    for (int i = s + 1; i < m.rows; ++i) {
      const long long t = m.at(i, s) / pv;
      if (t == 0) continue;
      for (int j = s; j < m.cols; ++j)
        m.at(i, j) = rp.reduce(m.at(i, j) - t % rp.pn * m.at(s, j) % rp.pn);
    }
    for (int j = s + 1; j < m.cols; ++j) {
      const long long t = m.at(s, j) / pv;
      if (t == 0) continue;
      m.at(s, j) = 0;
    }
    type.push_back(best_v);
  }
  type.resize(eps, rp.N);
  return type;
}

std::vector<int> truncate_type(const std::vector<int>& full, int u,
                               const ResidueParams& rp) {
  if (u > int(full.size()))
    throw MathError("truncate_type: requested length exceeds the full type");
  for (int i = u; i < int(full.size()); ++i)
    if (full[i] != rp.N)
      throw MathError("truncate_type: nonzero divisor beyond the generic rank");
  return std::vector<int>(full.begin(), full.begin() + u);
}

std::vector<int> paired_type(const std::vector<int>& full, int u_half,
                             const ResidueParams& rp) {
  // values below N must occur an even number of times
  for (size_t i = 0; i < full.size();) {
    if (full[i] == rp.N) {
      ++i;
      continue;
    }
    if (i + 1 >= full.size() || full[i + 1] != full[i])
      throw MathError("paired_type: elementary divisors of an antisymmetric matrix must pair up");
    i += 2;
  }
  std::vector<int> half;
  half.reserve(u_half);
  for (size_t i = 0; int(half.size()) < u_half; ) {
    if (i + 1 < full.size() && full[i] < rp.N) {
      half.push_back(full[i]);
      i += 2;
    } else {
      half.push_back(rp.N);
      ++i;
    }
  }
  return half;
}

}  // namespace bizeta
