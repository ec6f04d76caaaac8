#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bizeta/counting.hpp"
#include "bizeta/lattice.hpp"
#include "bizeta/localring.hpp"

namespace bizeta {

/// Explicit finite group on coordinate vectors, used as an independent
/// brute-force oracle. Elements are mixed-radix coded by `moduli`.
struct FiniteGroupTable {
  std::string model;                     // "bch" or "heisenberg-matrix"
  std::vector<long long> moduli;         // one modulus per coordinate slot
  unsigned long long order = 1;
  std::function<std::vector<long long>(const std::vector<long long>&,
                                       const std::vector<long long>&)>
      mul;
  std::function<std::vector<long long>(const std::vector<long long>&)> inv;
  std::vector<std::vector<long long>> generators;

  unsigned long long encode(const std::vector<long long>& x) const;
  std::vector<long long> decode(unsigned long long idx) const;

  /// Identity/inverse axioms on every element; associativity exhaustively
  /// for tiny groups and on `samples` deterministic random triples otherwise.
  void validate(unsigned long long full_order_cutoff = 100,
                int samples = 100000) const;
};

/// Group on (Z/p^N)^h with the truncated Hausdorff product. Requires p odd
/// for class <= 2 and p >= 5 for class 3 (2 and 12 must be units).
FiniteGroupTable bch_group(const LatticeProfile& P, long long p, int N);

/// Upper unitriangular 3x3 matrices over Z/m; valid for any m >= 2,
/// including even and composite moduli.
FiniteGroupTable heisenberg_matrix_group(long long m);

/// Conjugacy class sizes by orbit sweeps under conjugation by generators.
std::map<unsigned long long, mpz_class> class_size_histogram(
    const FiniteGroupTable& g, unsigned long long ceiling = 1000000);

/// Class sizes of a p-power-order group folded into a CountVector: values[i]
/// counts classes of size p^i.
CountVector conjugacy_profile(const FiniteGroupTable& g, const ResidueParams& rp,
                              unsigned long long ceiling = 1000000);

/// Class number via commuting pairs: #{(x,y) : xy = yx} / |G|.
mpz_class commuting_pairs_class_number(const FiniteGroupTable& g,
                                       unsigned long long ceiling = 100000000);

struct CrtReport {
  bool sizes_ok = false;
  bool class_number_ok = false;
  mpz_class k1, k2, k12;
  bool ok() const { return sizes_ok && class_number_ok; }
};

/// Verifies that conjugacy data of H(Z/m1m2) is the convolution of the data
/// of H(Z/m1) and H(Z/m2) for coprime moduli, and that class numbers
/// multiply.
CrtReport crt_multiplicativity_check(long long m1, long long m2,
                                     unsigned long long ceiling = 1000000);

}  // namespace bizeta
