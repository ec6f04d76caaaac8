#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "bizeta/commutators.hpp"
#include "bizeta/lattice.hpp"
#include "bizeta/localring.hpp"

namespace bizeta {

enum class DomainTag { Full, Primitive };
enum class Strategy { Naive, Orbit };

struct EnumOptions {
  unsigned long long ceiling = 100'000'000ULL;  // max points per enumeration
  int threads = 1;
  Strategy strategy = Strategy::Naive;
};

/// Histogram of elementary divisor types of an evaluated form matrix over
/// (Z/p^N)^n (full) or over the primitive points (primitive). Keys are
/// nu-tuples of length u_A for A-kind matrices and nu-tilde-tuples of length
/// u_half for B-kind.
struct EdtHistogram {
  ResidueParams params;
  LinearFormMatrix::Kind kind;
  DomainTag domain;
  int nvars = 0;
  int tuple_len = 0;
  std::map<std::vector<int>, unsigned long long> counts;

  mpz_class total() const;
  /// Sum of counts must be p^{nN} (full) or p^{nN} - p^{n(N-1)} (primitive).
  void validate_mass() const;
};

/// Commutator matrices of a profile together with their certified generic
/// ranks; the per-histogram tuple lengths are u_A and u_B = u/2.
struct CommutatorData {
  LinearFormMatrix A, B;
  int uA = 0;       // generic rank of A
  int uB_half = 0;  // half the generic rank of B
};
CommutatorData commutator_data(const LatticeProfile& P);

/// Exact histogram by exhaustive enumeration. The orbit strategy enumerates
/// one representative per unit-scaling orbit of primitive points (first unit
/// coordinate scaled to 1) and multiplies by (p-1)p^{N-1}; full-domain orbit
/// histograms are assembled from primitive ones level by level.
EdtHistogram edt_histogram(const LinearFormMatrix& m, int tuple_len,
                           const ResidueParams& rp, DomainTag domain,
                           const EnumOptions& opts = {});

/// Kirillov-side count vectors: values[i] holds r_{p^i}(G_N) or c_{p^i}(G_N)
/// for i = 0..u*N.
struct CountVector {
  enum class Kind { Irr, Cc };
  Kind kind;
  ResidueParams params;
  int level = 0;  // N
  std::vector<mpz_class> values;

  mpz_class class_number() const;  // sum of entries
};

/// Rejects primes where the counting formulas are not valid: bad primes of
/// the profile, and p <= c for declared class c >= 3.
void check_gate(const LatticeProfile& P, long long p);

CountVector rep_counts(const LatticeProfile& P, const ResidueParams& rp,
                       const EnumOptions& opts = {});
CountVector cc_counts(const LatticeProfile& P, const ResidueParams& rp,
                      const EnumOptions& opts = {});

/// Count vectors from a precomputed full-domain histogram.
CountVector rep_counts_from(const EdtHistogram& full_b, int free_rank_r);
CountVector cc_counts_from(const EdtHistogram& full_a, int centre_rank_z);

struct ShiftIdentityReport {
  bool ok = false;
  mpz_class full_side;       // |W_{N, M, m}|
  mpz_class primitive_side;  // N^o_{N - m_1, M, m - m_1}
};

/// Checks |W_{N,M,m}| = N^o_{N-m1,M,m-m1} for a type with m_1 > 0 by
/// enumerating both sides independently.
ShiftIdentityReport shift_identity_check(const LinearFormMatrix& m, int tuple_len,
                                         const ResidueParams& rp,
                                         const std::vector<int>& type,
                                         const EnumOptions& opts = {});

}  // namespace bizeta
