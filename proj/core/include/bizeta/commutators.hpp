#pragma once

#include <utility>
#include <vector>

#include "bizeta/lattice.hpp"
#include "bizeta/localring.hpp"

namespace bizeta {

/// Matrix whose entries are integer linear forms in n variables.
/// B-kind matrices are antisymmetric as matrices of forms.
struct LinearFormMatrix {
  enum class Kind { A, B };

  Kind kind = Kind::A;
  int rows = 0, cols = 0, nvars = 0;
  // dense entry (i, j): coefficient vector of length nvars
  std::vector<std::vector<long long>> entry;

  const std::vector<long long>& form(int i, int j) const {
    return entry[size_t(i) * cols + j];
  }
  std::vector<long long>& form(int i, int j) { return entry[size_t(i) * cols + j]; }
};

/// The A-commutator (a x b in a variables) and B-commutator (a x a in b
/// variables) matrices of a profile: A_ik = sum_j lambda_ijk X_j and
/// B_ij = sum_k lambda_ijk Y_k.
std::pair<LinearFormMatrix, LinearFormMatrix> commutator_matrices(const LatticeProfile& P);

/// Entrywise evaluation at a point of (Z/p^N)^nvars.
RMat evaluate(const LinearFormMatrix& m, const std::vector<long long>& point,
              const ResidueParams& rp);

struct GenericRank {
  int u = 0;       // maximal rank over Q at integer points
  int u_half = 0;  // u / 2, only meaningful for B-kind
};

/// Maximal rank of the form matrix over Q at integer points, certified by a
/// symbolically expanded nonzero minor at the claimed size and symbolic
/// vanishing of all larger minors. For B-kind the rank must be even.
GenericRank generic_rank(const LinearFormMatrix& m);

}  // namespace bizeta
