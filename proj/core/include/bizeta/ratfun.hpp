#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <string>

#include "bizeta/zeta.hpp"

namespace bizeta {

/// Sparse polynomial with rational coefficients in the commuting symbols
/// q, T1, T2, T. Exponents may go negative transiently during substitution;
/// RatFun normalization clears them by monomial scaling.
class Poly {
 public:
  using Exp = std::array<int, 4>;
  enum Symbol { Q = 0, SymT1 = 1, SymT2 = 2, SymT = 3 };

  Poly() = default;
  static Poly constant(const mpq_class& c);
  static Poly monomial(const Exp& e, const mpq_class& c);
  static Poly symbol(Symbol s, int power = 1);

  bool is_zero() const { return t_.empty(); }
  bool is_one() const;
  const std::map<Exp, mpq_class>& terms() const { return t_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const { return t_ == o.t_; }

  void add_term(const Exp& e, const mpq_class& c);
  /// exponentwise substitutions
  Poly subst_symbol_one(Symbol s) const;                   // s := 1
  Poly subst_symbol_monomial(Symbol s, const Exp& m) const;  // s := monomial m
  Poly invert_symbols() const;                             // negate every exponent
  Poly eval_q(long long p) const;                          // q := p
  Poly scale(const mpq_class& c) const;

  int min_exponent(Symbol s) const;  // 0 for the zero polynomial
  int max_exponent(Symbol s) const;
  bool uses(Symbol s) const;
  std::string to_string() const;

 private:
  std::map<Exp, mpq_class> t_;
};

/// Exact division a / b; empty when b does not divide a. Exponents of both
/// operands must be nonnegative.
std::optional<Poly> poly_divide(const Poly& a, const Poly& b);

/// Rational function in normal form: numerator and denominator share no
/// monomial factor, exponents are nonnegative, and the denominator's
/// lexicographically least term has coefficient +1.
class RatFun {
 public:
  RatFun();  // zero
  RatFun(Poly num, Poly den);
  static RatFun from_poly(Poly p);
  static RatFun parse(const std::string& text);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;

  /// Mathematical equality by cross multiplication.
  bool equals(const RatFun& o) const;
  bool operator==(const RatFun& o) const { return equals(o); }

  std::string to_string() const;

 private:
  Poly num_, den_;
  void normalize();
};

/// Power-series expansion in T2 to order nmax with q := p. The denominator
/// must have constant term free of T1 and T2. Every coefficient must come
/// out integral.
TruncatedBivariateSeries expand(const RatFun& f, long long p, int nmax);

/// Fit numerator * 1/denominator to a series: denominator is a polynomial in
/// q, T1, T2 (q is specialized to the series prime); the numerator is read
/// off the product and all residual coefficients up to the truncation order
/// must vanish.
RatFun fit(const TruncatedBivariateSeries& zs, const RatFun& denominator);

struct FuneqReport {
  bool ok = false;
  RatFun residual;
};

/// Substitutes q -> 1/q, T1 -> 1/T1, T2 -> 1/T2 and tests equality with
/// -q^h T2 f exactly.
FuneqReport functional_equation_check(const RatFun& f, int h);

/// T1 := 1 (class-number specialization).
RatFun specialize_class_number(const RatFun& f);

/// Class-2 twist rule: multiply by (1 - q^r T2), then T2 := q^{-r},
/// T1 := q^2 T.
RatFun specialize_twist(const RatFun& f, int free_rank_r);

}  // namespace bizeta
