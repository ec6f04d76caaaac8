#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bizeta/zmat.hpp"

namespace bizeta {

/// Nilpotent Z-Lie lattice given by structure constants on a free basis.
/// Brackets are stored sparsely for i < j only; antisymmetry is implicit.
struct LieLattice {
  std::string name;
  int rank = 0;  // h
  std::vector<std::string> basis_names;
  int declared_class = 1;
  // (i, j) with 0 <= i < j < rank  ->  { k -> coefficient }
  std::map<std::pair<int, int>, std::map<int, long long>> brackets;

  // optional adapted-basis hints carried by the input document
  std::optional<std::vector<int>> e_hint;                      // 0-based indices
  std::optional<std::vector<std::vector<long long>>> f_hint;   // h-vectors

  /// [e_i, e_j] as an integer vector, any i, j.
  std::vector<mpz_class> basis_bracket(int i, int j) const;
  /// Bilinear extension of the bracket.
  std::vector<mpz_class> bracket(const std::vector<mpz_class>& x,
                                 const std::vector<mpz_class>& y) const;

  /// Checks the Jacobi identity and the declared nilpotency class.
  /// Throws ValidationError naming the first failing datum.
  void validate() const;
};

/// Parse and validate a lattice document (JSON text, see README for the
/// field layout). Throws ParseError / ValidationError.
LieLattice parse_lattice(const std::string& document);

/// Names of the lattices shipped with the engine: "heisenberg", "f32" and
/// the parametric family "abelian_<m>".
std::vector<std::string> builtin_lattice_names();
/// Document text for a built-in lattice; empty optional when unknown.
std::optional<std::string> builtin_lattice_document(const std::string& name);

/// Submodule of Z^h in canonical (Hermite) form. Equality of submodules is
/// equality of canonical bases.
class Submodule {
 public:
  Submodule() = default;
  static Submodule zero(int ambient);
  static Submodule full(int ambient);
  static Submodule span(int ambient, const ZMat& generators);

  int ambient() const { return ambient_; }
  int rank() const { return basis_.rows(); }
  const ZMat& basis() const { return basis_; }
  bool is_zero() const { return rank() == 0; }

  bool contains(const std::vector<mpz_class>& v) const;
  bool contains(const Submodule& other) const;
  bool operator==(const Submodule& o) const = default;

 private:
  int ambient_ = 0;
  ZMat basis_;
};

Submodule derived_lattice(const LieLattice& L);
Submodule center(const LieLattice& L);
/// Smallest submodule containing S with torsion-free quotient.
Submodule isolator(const Submodule& s);
Submodule module_sum(const Submodule& a, const Submodule& b);
Submodule module_intersect(const Submodule& a, const Submodule& b);
/// |sup : sub| for submodules of equal rank with sub contained in sup.
mpz_class module_index(const Submodule& sub, const Submodule& sup);

/// Adapted-basis data for the commutator matrices. e holds lifts of a basis
/// of the quotient by the centre, f a basis of a finite-index free submodule
/// of the isolated derived lattice; lambda re-expresses the brackets of the
/// e's in terms of the f's.
struct LatticeProfile {
  LieLattice lattice;
  std::vector<std::vector<mpz_class>> e;  // a vectors of length h
  std::vector<std::vector<mpz_class>> f;  // b vectors of length h
  int h = 0, a = 0, b = 0, r = 0, z = 0, k = 0;
  std::vector<long long> lambda;  // lambda[(i*a + j)*b + k], i, j < a, k < b
  std::vector<long long> bad_primes;  // sorted, deduplicated

  long long lambda_at(int i, int j, int k) const {
    return lambda[(size_t(i) * a + j) * b + k];
  }
  bool is_bad_prime(long long p) const;
};

/// Build a validated profile. Ordering hints default to the ones carried by
/// the lattice document; when absent, an adapted basis is constructed from
/// the centre, the derived lattice and their isolators.
LatticeProfile profile(const LieLattice& L,
                       std::optional<std::vector<int>> e_order = std::nullopt,
                       std::optional<std::vector<std::vector<long long>>> f_choice =
                           std::nullopt);

}  // namespace bizeta
