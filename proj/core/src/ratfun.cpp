#include "bizeta/ratfun.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "bizeta/errors.hpp"

namespace bizeta {

Poly Poly::constant(const mpq_class& c) {
  Poly p;
  if (c != 0) p.t_[{0, 0, 0, 0}] = c;
  return p;
}

Poly Poly::monomial(const Exp& e, const mpq_class& c) {
  Poly p;
  if (c != 0) p.t_[e] = c;
  return p;
}

Poly Poly::symbol(Symbol s, int power) {
  Exp e{0, 0, 0, 0};
  e[s] = power;
  return monomial(e, 1);
}

bool Poly::is_one() const {
  return t_.size() == 1 && t_.begin()->first == Exp{0, 0, 0, 0} &&
         t_.begin()->second == 1;
}

void Poly::add_term(const Exp& e, const mpq_class& c) {
  auto& v = t_[e];
  v += c;
  if (v == 0) t_.erase(e);
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [e, c] : o.t_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [e, c] : o.t_) r.add_term(e, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [ea, ca] : t_)
    for (const auto& [eb, cb] : o.t_) {
      Exp e;
      for (int i = 0; i < 4; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [e, c] : t_) r.t_[e] = -c;
  return r;
}

Poly Poly::subst_symbol_one(Symbol s) const {
  Poly r;
  for (const auto& [e, c] : t_) {
    Exp ne = e;
    ne[s] = 0;
    r.add_term(ne, c);
  }
  return r;
}

Poly Poly::subst_symbol_monomial(Symbol s, const Exp& m) const {
  Poly r;
  for (const auto& [e, c] : t_) {
    Exp ne = e;
    const int k = ne[s];
    ne[s] = 0;
    for (int i = 0; i < 4; ++i) ne[i] += k * m[i];
    r.add_term(ne, c);
  }
  return r;
}

Poly Poly::invert_symbols() const {
  Poly r;
  for (const auto& [e, c] : t_) r.t_[{-e[0], -e[1], -e[2], -e[3]}] = c;
  return r;
}

Poly Poly::eval_q(long long p) const {
  Poly r;
  for (const auto& [e, c] : t_) {
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(e[Q] >= 0 ? e[Q] : -e[Q]));
    mpq_class nc = c;
    if (e[Q] >= 0)
      nc *= pw;
    else
      nc /= pw;
    Exp ne = e;
    ne[Q] = 0;
    r.add_term(ne, nc);
  }
  return r;
}

Poly Poly::scale(const mpq_class& c) const {
  Poly r;
  if (c == 0) return r;
  for (const auto& [e, v] : t_) r.t_[e] = v * c;
  return r;
}

int Poly::min_exponent(Symbol s) const {
  int m = 0;
  bool first = true;
  for (const auto& [e, c] : t_) {
    (void)c;
    m = first ? e[s] : std::min(m, e[s]);
    first = false;
  }
  return m;
}

int Poly::max_exponent(Symbol s) const {
  int m = 0;
  bool first = true;
  for (const auto& [e, c] : t_) {
    (void)c;
    m = first ? e[s] : std::max(m, e[s]);
    first = false;
  }
  return m;
}

bool Poly::uses(Symbol s) const {
  for (const auto& [e, c] : t_) {
    (void)c;
    if (e[s] != 0) return true;
  }
  return false;
}

std::string Poly::to_string() const {
  if (t_.empty()) return "0";
  static const char* names[4] = {"q", "T1", "T2", "T"};
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : t_) {
    mpq_class a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    std::string mono;
    for (int s = 0; s < 4; ++s) {
      if (e[s] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[s];
      if (e[s] != 1) mono += "^" + std::to_string(e[s]);
    }
    if (mono.empty()) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << mono;
    }
    first = false;
  }
  return os.str();
}

std::optional<Poly> poly_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw MathError("poly_divide: division by zero");
  Poly rem = a, quot;
  const auto& lead_b = *b.terms().rbegin();
  while (!rem.is_zero()) {
    const auto& lead_r = *rem.terms().rbegin();
    Poly::Exp e;
    for (int i = 0; i < 4; ++i) {
      e[i] = lead_r.first[i] - lead_b.first[i];
      if (e[i] < 0) return std::nullopt;
    }
    const Poly t = Poly::monomial(e, lead_r.second / lead_b.second);
    quot = quot + t;
    rem = rem - t * b;
  }
  return quot;
}

RatFun::RatFun() : num_(), den_(Poly::constant(1)) {}

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw MathError("rational function with zero denominator");
  normalize();
}

RatFun RatFun::from_poly(Poly p) { return RatFun(std::move(p), Poly::constant(1)); }

void RatFun::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  // joint monomial clearing, also removes negative exponents
  Poly::Exp shift{0, 0, 0, 0};
  for (int s = 0; s < 4; ++s) {
    const int m = std::min(num_.min_exponent(Poly::Symbol(s)),
                           den_.min_exponent(Poly::Symbol(s)));
    shift[s] = -m;
  }
  if (shift != Poly::Exp{0, 0, 0, 0}) {
    const Poly mono = Poly::monomial(shift, 1);
    num_ = num_ * mono;
    den_ = den_ * mono;
  }
  // unit-scale so the lexicographically least denominator term is +1
  const mpq_class lead = den_.terms().begin()->second;
  if (lead != 1) {
    num_ = num_.scale(1 / lead);
    den_ = den_.scale(1 / lead);
  }
}

RatFun RatFun::operator+(const RatFun& o) const {
  return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const {
  return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator*(const RatFun& o) const {
  return RatFun(num_ * o.num_, den_ * o.den_);
}

RatFun RatFun::operator/(const RatFun& o) const {
  if (o.num_.is_zero()) throw MathError("division by the zero rational function");
  return RatFun(num_ * o.den_, den_ * o.num_);
}

bool RatFun::equals(const RatFun& o) const { return num_ * o.den_ == o.num_ * den_; }

std::string RatFun::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  RatFun parse_expr() {
    RatFun acc = parse_term();
    for (;;) {
      if (eat('+'))
        acc = acc + parse_term();
      else if (eat('-'))
        acc = acc - parse_term();
      else
        return acc;
    }
  }

  RatFun parse_term() {
    RatFun acc = parse_factor();
    for (;;) {
      if (eat('*'))
        acc = acc * parse_factor();
      else if (eat('/'))
        acc = acc / parse_factor();
      else
        return acc;
    }
  }

  RatFun parse_factor() {
    if (eat('-')) return RatFun::from_poly(Poly::constant(-1)) * parse_factor();
    RatFun base = parse_atom();
    if (eat('^')) {
      const long long e = parse_integer();
      if (e < 0) throw ParseError("negative exponents are not accepted");
      RatFun r = RatFun::from_poly(Poly::constant(1));
      for (long long i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  long long parse_integer() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw ParseError("expected an integer at position " + std::to_string(start));
    return std::stoll(s.substr(start, pos - start));
  }

  RatFun parse_atom() {
    skip_ws();
    if (pos >= s.size()) throw ParseError("unexpected end of expression");
    const char c = s[pos];
    if (c == '(') {
      ++pos;
      RatFun inner = parse_expr();
      if (!eat(')')) throw ParseError("missing closing parenthesis");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return RatFun::from_poly(Poly::constant(mpq_class(mpz_class(s.substr(start, pos - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      const std::string name = s.substr(start, pos - start);
      if (name == "q") return RatFun::from_poly(Poly::symbol(Poly::Q));
      if (name == "T1") return RatFun::from_poly(Poly::symbol(Poly::SymT1));
      if (name == "T2") return RatFun::from_poly(Poly::symbol(Poly::SymT2));
      if (name == "T") return RatFun::from_poly(Poly::symbol(Poly::SymT));
      throw ParseError("unknown symbol '" + name + "' (expected q, T1, T2 or T)");
    }
    throw ParseError(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

RatFun RatFun::parse(const std::string& text) {
  Parser p(text);
  RatFun r = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size())
    throw ParseError("trailing input at position " + std::to_string(p.pos));
  return r;
}

namespace {

Poly truncate_t2(const Poly& p, int nmax) {
  Poly r;
  for (const auto& [e, c] : p.terms())
    if (e[Poly::SymT2] <= nmax) r.add_term(e, c);
  return r;
}

}  // namespace

TruncatedBivariateSeries expand(const RatFun& f, long long p, int nmax) {
  if (f.num().uses(Poly::SymT) || f.den().uses(Poly::SymT))
    throw MathError("expand: the symbol T has no series meaning here");
  const Poly num = f.num().eval_q(p);
  const Poly den = f.den().eval_q(p);
  // the T2-free part of the denominator must be a nonzero constant
  mpq_class d0 = 0;
  for (const auto& [e, c] : den.terms()) {
    if (e[Poly::SymT2] != 0) continue;
    if (e[Poly::SymT1] != 0)
      throw MathError("expand: denominator has a T1-only term; slices are not polynomial");
    d0 = c;
  }
  if (d0 == 0) throw MathError("expand: denominator vanishes at T2 = 0");
  const Poly e_part = den - Poly::constant(d0);
  // inverse of den as a T2-adic series: sum (-E)^k / d0^{k+1}
  Poly inv = Poly::constant(1 / d0);
  Poly power = Poly::constant(1);
  for (int k = 1; k <= nmax && !e_part.is_zero(); ++k) {
    power = truncate_t2(power * (-e_part), nmax);
    if (power.is_zero()) break;
    mpq_class dk = 1;
    for (int t = 0; t <= k; ++t) dk *= d0;
    inv = inv + power.scale(1 / dk);
  }
  const Poly w = truncate_t2(num * inv, nmax);
  TruncatedBivariateSeries zs;
  zs.p = p;
  zs.nmax = nmax;
  for (const auto& [e, c] : w.terms()) {
    if (c == 0) continue;
    if (e[Poly::SymT1] < 0 || e[Poly::SymT2] < 0)
      throw MathError("expand: negative exponent survived normalization");
    if (c.get_den() != 1)
      throw MathError("expand: non-integral series coefficient " + c.get_str() +
                      " at (N, i) = (" + std::to_string(e[Poly::SymT2]) + ", " +
                      std::to_string(e[Poly::SymT1]) + ")");
    zs.coeff[{e[Poly::SymT2], e[Poly::SymT1]}] = c.get_num();
  }
  return zs;
}

RatFun fit(const TruncatedBivariateSeries& zs, const RatFun& denominator) {
  if (!denominator.den().is_one())
    throw FitError("fit: denominator must be a polynomial", false);
  const Poly den = denominator.num().eval_q(zs.p);
  if (den.is_zero()) throw FitError("fit: zero denominator", false);
  Poly series;
  for (const auto& [ni, c] : zs.coeff)
    series.add_term({0, ni.second, ni.first, 0}, mpq_class(c));
  const Poly w = truncate_t2(den * series, zs.nmax);
  const int dbox = den.max_exponent(Poly::SymT2);
  if (zs.nmax < dbox + 1)
    throw FitError("fit: truncation order " + std::to_string(zs.nmax) +
                       " cannot pin a numerator of T2-degree " + std::to_string(dbox),
                   false);
  Poly numer, residual;
  for (const auto& [e, c] : w.terms())
    (e[Poly::SymT2] <= dbox ? numer : residual).add_term(e, c);
  if (!residual.is_zero())
    throw FitError("fit: inconsistent denominator, residual " + residual.to_string(), true);
  return RatFun(numer, den);
}

FuneqReport functional_equation_check(const RatFun& f, int h) {
  if (f.num().uses(Poly::SymT) || f.den().uses(Poly::SymT))
    throw MathError("functional equation applies to forms in q, T1, T2 only");
  const RatFun inverted(f.num().invert_symbols(), f.den().invert_symbols());
  const RatFun target = f * RatFun::from_poly(Poly::monomial({h, 0, 1, 0}, -1));
  FuneqReport rep;
  rep.residual = inverted - target;
  rep.ok = rep.residual.is_zero();
  return rep;
}

RatFun specialize_class_number(const RatFun& f) {
  const Poly den = f.den().subst_symbol_one(Poly::SymT1);
  if (den.is_zero())
    throw PoleError("T1 := 1 hits a pole of the denominator " + f.den().to_string());
  return RatFun(f.num().subst_symbol_one(Poly::SymT1), den);
}

RatFun specialize_twist(const RatFun& f, int free_rank_r) {
  // multiply by (1 - q^r T2), cancelling against the denominator when possible
  const Poly factor =
      Poly::constant(1) - Poly::monomial({free_rank_r, 0, 1, 0}, 1);
  Poly num = f.num(), den = f.den();
  if (auto q = poly_divide(den, factor)) {
    den = *q;
  } else {
    num = num * factor;
  }
  // T2 := q^{-r}, then T1 := q^2 T
  const auto subst = [&](const Poly& p) {
    return p.subst_symbol_monomial(Poly::SymT2, {-free_rank_r, 0, 0, 0})
        .subst_symbol_monomial(Poly::SymT1, {2, 0, 0, 1});
  };
  const Poly snum = subst(num), sden = subst(den);
  if (sden.is_zero())
    throw PoleError("twist substitution hits a pole of the factor " + den.to_string());
  return RatFun(snum, sden);
}

}  // namespace bizeta
