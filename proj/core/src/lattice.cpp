#include "bizeta/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bizeta/errors.hpp"

namespace bizeta {

using nlohmann::json;

std::vector<mpz_class> LieLattice::basis_bracket(int i, int j) const {
  std::vector<mpz_class> v(rank);
  if (i == j) return v;
  const bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = brackets.find({i, j});
  if (it != brackets.end())
    for (const auto& [k, c] : it->second) v[k] = to_mpz(flip ? -c : c);
  return v;
}

std::vector<mpz_class> LieLattice::bracket(const std::vector<mpz_class>& x,
                                           const std::vector<mpz_class>& y) const {
  std::vector<mpz_class> out(rank);
  for (const auto& [ij, terms] : brackets) {
    const auto& [i, j] = ij;
    // [x, y] picks up (x_i y_j - x_j y_i) * [e_i, e_j]
    mpz_class c = x[i] * y[j] - x[j] * y[i];
    if (c == 0) continue;
    for (const auto& [k, lam] : terms) out[k] += c * to_mpz(lam);
  }
  return out;
}

namespace {

ZMat bracket_rows(const LieLattice& L, const ZMat& gens) {
  // rows [g, e_j] for every generator row g and basis vector e_j
  ZMat out(gens.rows() * L.rank, L.rank);
  for (int gi = 0; gi < gens.rows(); ++gi) {
    const auto g = gens.row(gi);
    for (int j = 0; j < L.rank; ++j) {
      std::vector<mpz_class> br(L.rank);
      for (int l = 0; l < L.rank; ++l) {
        if (g[l] == 0 || l == j) continue;
        const auto blj = L.basis_bracket(l, j);
        for (int k = 0; k < L.rank; ++k) br[k] += g[l] * blj[k];
      }
      for (int k = 0; k < L.rank; ++k) out.at(gi * L.rank + j, k) = br[k];
    }
  }
  return out;
}

void add_prime_factors(std::set<long long>& out, mpz_class n) {
  n = abs(n);
  if (n <= 1) return;
  for (long long d = 2; to_mpz(d) * to_mpz(d) <= n; ++d)
    while (n % to_mpz(d) == 0) {
      out.insert(d);
      n /= to_mpz(d);
    }
  if (n > 1) {
    if (!n.fits_slong_p()) throw MathError("index prime factor out of machine range");
    out.insert(n.get_si());
  }
}

}  // namespace

void LieLattice::validate() const {
  if (rank <= 0) throw ValidationError("rank must be positive");
  if (declared_class <= 0) throw ValidationError("class must be positive");
  for (const auto& [ij, terms] : brackets) {
    const auto& [i, j] = ij;
    if (!(0 <= i && i < j && j < rank))
      throw ValidationError("bracket indices out of range");
    for (const auto& [k, c] : terms) {
      (void)c;
      if (!(0 <= k && k < rank)) throw ValidationError("bracket target out of range");
    }
  }
  // Jacobi identity on basis triples
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j)
      for (int k = j + 1; k < rank; ++k) {
        std::vector<mpz_class> acc(rank);
        auto add_term = [&](int a, int b, int c) {
          const auto ab = basis_bracket(a, b);
          for (int l = 0; l < rank; ++l) {
            if (ab[l] == 0) continue;
            const auto lc = basis_bracket(l, c);
            for (int t = 0; t < rank; ++t) acc[t] += ab[l] * lc[t];
          }
        };
        add_term(i, j, k);
        add_term(j, k, i);
        add_term(k, i, j);
        for (int t = 0; t < rank; ++t)
          if (acc[t] != 0) {
            std::ostringstream msg;
            msg << "Jacobi identity fails on basis triple (" << i + 1 << "," << j + 1
                << "," << k + 1 << ")";
            throw ValidationError(msg.str());
          }
      }
  // lower central series must reach 0 exactly at step declared_class + 1
  Submodule gamma = Submodule::full(rank);
  int step = 1;
  while (!gamma.is_zero()) {
    Submodule next = Submodule::span(rank, bracket_rows(*this, gamma.basis()));
    if (next == gamma)
      throw ValidationError("lattice is not nilpotent: lower central series stabilizes");
    gamma = next;
    ++step;
    if (step > rank + 1) throw ValidationError("lower central series does not terminate");
  }
  const int actual_class = step - 1;
  if (actual_class != declared_class) {
    std::ostringstream msg;
    msg << "declared class " << declared_class << " but lower central series gives "
        << actual_class;
    throw ValidationError(msg.str());
  }
}

LieLattice parse_lattice(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    throw ParseError(std::string("lattice document: ") + e.what());
  }
  LieLattice L;
  try {
    L.name = doc.at("name").get<std::string>();
    L.rank = doc.at("rank").get<int>();
    L.declared_class = doc.at("class").get<int>();
    if (doc.contains("basis")) {
      L.basis_names = doc.at("basis").get<std::vector<std::string>>();
      if (int(L.basis_names.size()) != L.rank)
        throw ParseError("basis array length differs from rank");
    } else {
      for (int i = 0; i < L.rank; ++i) L.basis_names.push_back("e" + std::to_string(i + 1));
    }
    if (doc.contains("brackets"))
      for (const auto& [key, val] : doc.at("brackets").items()) {
        int i = 0, j = 0;
        char comma = 0;
        std::istringstream is(key);
        if (!(is >> i >> comma >> j) || comma != ',')
          throw ParseError("bracket key '" + key + "' is not of the form \"i,j\"");
        if (!(1 <= i && i < j && j <= L.rank))
          throw ParseError("bracket key '" + key + "' out of range (need 1 <= i < j <= rank)");
        std::map<int, long long> terms;
        for (const auto& [tk, tv] : val.items()) {
          const int k = std::stoi(tk);
          if (!(1 <= k && k <= L.rank))
            throw ParseError("bracket target '" + tk + "' out of range");
          const long long c = tv.get<long long>();
          if (c != 0) terms[k - 1] = c;
        }
        if (!terms.empty()) L.brackets[{i - 1, j - 1}] = std::move(terms);
      }
    if (doc.contains("e")) {
      std::vector<int> e1 = doc.at("e").get<std::vector<int>>();
      for (int& idx : e1) {
        if (!(1 <= idx && idx <= L.rank)) throw ParseError("e index out of range");
        --idx;
      }
      L.e_hint = std::move(e1);
    }
    if (doc.contains("f")) {
      auto fv = doc.at("f").get<std::vector<std::vector<long long>>>();
      for (const auto& row : fv)
        if (int(row.size()) != L.rank) throw ParseError("f vector length differs from rank");
      L.f_hint = std::move(fv);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("lattice document: ") + e.what());
  }
  L.validate();
  return L;
}

std::vector<std::string> builtin_lattice_names() {
  return {"heisenberg", "f32", "abelian_1", "abelian_2", "abelian_3"};
}

std::optional<std::string> builtin_lattice_document(const std::string& name) {
  if (name == "heisenberg")
    return R"({
      "name": "heisenberg",
      "rank": 3,
      "basis": ["x1", "x2", "y"],
      "class": 2,
      "brackets": {"1,2": {"3": 1}},
      "e": [1, 2],
      "f": [[0, 0, 1]]
    })";
  if (name == "f32")
    return R"({
      "name": "f32",
      "rank": 5,
      "basis": ["x1", "x2", "y", "z1", "z2"],
      "class": 3,
      "brackets": {"1,2": {"3": 1}, "1,3": {"4": -1}, "2,3": {"5": -1}},
      "e": [3, 1, 2],
      "f": [[0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [0, 0, 1, 0, 0]]
    })";
  if (name.rfind("abelian_", 0) == 0) {
    int m = 0;
    try {
      m = std::stoi(name.substr(8));
    } catch (...) {
      return std::nullopt;
    }
    if (m < 1 || m > 16) return std::nullopt;
    std::ostringstream doc;
    doc << "{\"name\": \"" << name << "\", \"rank\": " << m << ", \"basis\": [";
    for (int i = 0; i < m; ++i) doc << (i ? ", " : "") << "\"a" << i + 1 << "\"";
    doc << "], \"class\": 1, \"brackets\": {}}";
    return doc.str();
  }
  return std::nullopt;
}

Submodule Submodule::zero(int ambient) {
  Submodule s;
  s.ambient_ = ambient;
  s.basis_ = ZMat(0, ambient);
  return s;
}

Submodule Submodule::full(int ambient) {
  Submodule s;
  s.ambient_ = ambient;
  s.basis_ = ZMat::identity(ambient);
  return s;
}

Submodule Submodule::span(int ambient, const ZMat& generators) {
  if (generators.rows() > 0 && generators.cols() != ambient)
    throw MathError("span: generator length differs from ambient rank");
  Submodule s;
  s.ambient_ = ambient;
  s.basis_ = generators.rows() ? hnf(generators) : ZMat(0, ambient);
  return s;
}

bool Submodule::contains(const std::vector<mpz_class>& v) const {
  return solve_left(basis_, v).has_value();
}

bool Submodule::contains(const Submodule& other) const {
  for (int i = 0; i < other.rank(); ++i)
    if (!contains(other.basis().row(i))) return false;
  return true;
}

Submodule derived_lattice(const LieLattice& L) {
  std::vector<std::vector<mpz_class>> gens;
  for (const auto& [ij, terms] : L.brackets) {
    (void)terms;
    gens.push_back(L.basis_bracket(ij.first, ij.second));
  }
  return Submodule::span(L.rank, ZMat::from_rows(gens, L.rank));
}

Submodule center(const LieLattice& L) {
  // x is central iff x * C = 0 where row l of C concatenates [e_l, e_j] over j
  ZMat c(L.rank, L.rank * L.rank);
  for (int l = 0; l < L.rank; ++l)
    for (int j = 0; j < L.rank; ++j) {
      const auto br = L.basis_bracket(l, j);
      for (int k = 0; k < L.rank; ++k) c.at(l, j * L.rank + k) = br[k];
    }
  Submodule s;
  s = Submodule::span(L.rank, left_kernel(c));
  return s;
}

Submodule isolator(const Submodule& s) {
  // saturate: integer vectors orthogonal to the kernel of the basis
  ZMat rk = left_kernel(transpose(s.basis().rows() ? s.basis() : ZMat(0, s.ambient())));
  ZMat sat = left_kernel(transpose(rk));
  return Submodule::span(s.ambient(), sat);
}

Submodule module_sum(const Submodule& a, const Submodule& b) {
  if (a.ambient() != b.ambient()) throw MathError("module_sum: ambient mismatch");
  return Submodule::span(a.ambient(), vstack(a.basis(), b.basis()));
}

Submodule module_intersect(const Submodule& a, const Submodule& b) {
  if (a.ambient() != b.ambient()) throw MathError("module_intersect: ambient mismatch");
  if (a.is_zero() || b.is_zero()) return Submodule::zero(a.ambient());
  // kernel rows (u | v) of [A; -B] give u*A = v*B, the general intersection point
  ZMat nb = b.basis();
  for (int i = 0; i < nb.rows(); ++i) nb.negate_row(i);
  ZMat ker = left_kernel(vstack(a.basis(), nb));
  ZMat gens(ker.rows(), a.ambient());
  for (int i = 0; i < ker.rows(); ++i) {
    std::vector<mpz_class> u(ker.cols());
    for (int j = 0; j < ker.cols(); ++j) u[j] = ker.at(i, j);
    u.resize(a.rank());
    const auto pt = vec_mat_mul(u, a.basis());
    for (int j = 0; j < a.ambient(); ++j) gens.at(i, j) = pt[j];
  }
  return Submodule::span(a.ambient(), gens);
}

mpz_class module_index(const Submodule& sub, const Submodule& sup) {
  if (sub.rank() != sup.rank())
    throw MathError("module_index: submodules of different rank");
  if (sub.rank() == 0) return 1;
  ZMat coords(sub.rank(), sup.rank());
  for (int i = 0; i < sub.rank(); ++i) {
    auto x = solve_left(sup.basis(), sub.basis().row(i));
    if (!x) throw MathError("module_index: not a submodule");
    for (int j = 0; j < sup.rank(); ++j) coords.at(i, j) = (*x)[j];
  }
  mpz_class idx = 1;
  for (const auto& d : snf(coords).divisors) idx *= d;
  if (idx == 0) throw MathError("module_index: degenerate coordinates");
  return idx;
}

bool LatticeProfile::is_bad_prime(long long p) const {
  return std::binary_search(bad_primes.begin(), bad_primes.end(), p);
}

namespace {

struct QuotientMap {
  ZMat full_basis;  // z-basis rows then completion rows; unimodular
  int zrank = 0, arank = 0;

  std::vector<mpz_class> project(const std::vector<mpz_class>& v) const {
    auto x = solve_left(full_basis, v);
    if (!x) throw MathError("quotient projection failed on a full basis");
    return std::vector<mpz_class>(x->begin() + zrank, x->end());
  }

  ZMat project_rows(const ZMat& m) const {
    ZMat out(m.rows(), arank);
    for (int i = 0; i < m.rows(); ++i) {
      const auto pr = project(m.row(i));
      for (int j = 0; j < arank; ++j) out.at(i, j) = pr[j];
    }
    return out;
  }
};

std::vector<mpz_class> vec_to_mpz(const std::vector<long long>& v) {
  std::vector<mpz_class> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = to_mpz(v[i]);
  return out;
}

// lift a vector of the projected lattice back through a spanning set:
// solve x * proj(gens) = v and return x * gens
std::vector<mpz_class> lift_through(const ZMat& gens, const ZMat& proj_gens,
                                    const std::vector<mpz_class>& v) {
  auto x = solve_left(proj_gens, v);
  if (!x) throw MathError("lift_through: vector not in the projected lattice");
  return vec_mat_mul(*x, gens);
}

}  // namespace

LatticeProfile profile(const LieLattice& L, std::optional<std::vector<int>> e_order,
                       std::optional<std::vector<std::vector<long long>>> f_choice) {
  L.validate();
  LatticeProfile P;
  P.lattice = L;
  P.h = L.rank;

  const Submodule zc = center(L);
  const Submodule gp = derived_lattice(L);
  const Submodule igp = isolator(gp);
  const Submodule gpz = module_sum(gp, zc);
  const Submodule ipz = isolator(gpz);
  const Submodule gz = module_intersect(gp, zc);
  const Submodule igz = isolator(gz);

  P.z = zc.rank();
  P.a = P.h - P.z;
  P.b = gp.rank();
  P.r = P.h - P.b;
  P.k = ipz.rank() - P.z;

  std::set<long long> bad;
  add_prime_factors(bad, module_index(gp, igp));
  add_prime_factors(bad, module_index(gpz, ipz));
  add_prime_factors(bad, module_index(gz, igz));

  QuotientMap q;
  q.zrank = P.z;
  q.arank = P.a;
  q.full_basis = vstack(zc.basis(), completion_of_saturated(zc.basis()));

  const ZMat ipz_proj = q.project_rows(ipz.basis());
  const Submodule ipz_image = Submodule::span(P.a, ipz_proj);  // saturated, rank k

  if (!e_order && L.e_hint) e_order = L.e_hint;
  if (!f_choice && L.f_hint) f_choice = L.f_hint;

  // ---- choose e ----
  if (e_order) {
    if (int(e_order->size()) != P.a)
      throw ValidationError("e hint must list exactly rk(g/z) basis indices");
    std::set<int> seen;
    for (int idx : *e_order) {
      if (idx < 0 || idx >= P.h || !seen.insert(idx).second)
        throw ValidationError("e hint indices must be distinct basis positions");
      std::vector<mpz_class> v(P.h);
      v[idx] = 1;
      P.e.push_back(std::move(v));
    }
  } else {
    const ZMat head = completion_of_saturated(ipz_image.basis());  // a-k rows in Z^a
    for (int i = 0; i < head.rows(); ++i) {
      // lift through the completion part of the quotient basis
      std::vector<mpz_class> v(P.h);
      for (int j = 0; j < P.a; ++j)
        if (head.at(i, j) != 0)
          for (int t = 0; t < P.h; ++t)
            v[t] += head.at(i, j) * q.full_basis.at(P.z + j, t);
      P.e.push_back(std::move(v));
    }
    for (int i = 0; i < ipz_image.rank(); ++i)
      P.e.push_back(lift_through(ipz.basis(), ipz_proj, ipz_image.basis().row(i)));
  }

  // validate e: images modulo the centre must be a finite-index basis, and
  // exactly k of the e's must lie in the isolator of g' + z
  {
    ZMat eproj(P.a, P.a);
    for (int i = 0; i < P.a; ++i) {
      const auto pr = q.project(P.e[i]);
      for (int j = 0; j < P.a; ++j) eproj.at(i, j) = pr[j];
    }
    if (hnf(eproj).rows() != P.a)
      throw ValidationError("e vectors do not span g/z up to finite index");
    add_prime_factors(bad, module_index(Submodule::span(P.a, eproj), Submodule::full(P.a)));
    std::vector<int> designated;
    for (int i = 0; i < P.a; ++i)
      if (ipz.contains(P.e[i])) designated.push_back(i);
    if (int(designated.size()) != P.k)
      throw ValidationError("e hint: expected exactly k vectors inside the isolator of g'+z");
    if (P.k > 0) {
      ZMat dproj(P.k, P.a);
      for (int t = 0; t < P.k; ++t) {
        const auto pr = q.project(P.e[designated[t]]);
        for (int j = 0; j < P.a; ++j) dproj.at(t, j) = pr[j];
      }
      const Submodule dspan = Submodule::span(P.a, dproj);
      if (dspan.rank() != P.k)
        throw ValidationError("designated e vectors are dependent modulo the centre");
      add_prime_factors(bad, module_index(dspan, ipz_image));
    }
  }

  // ---- choose f ----
  const ZMat igp_proj_raw = q.project_rows(igp.basis());
  const Submodule igp_image = Submodule::span(P.a, igp_proj_raw);  // rank k
  if (igp_image.rank() != P.k) throw MathError("rank bookkeeping failed for rk(i(g') mod z)");
  if (P.k > 0) add_prime_factors(bad, module_index(igp_image, ipz_image));

  if (f_choice) {
    if (int(f_choice->size()) != P.b)
      throw ValidationError("f hint must list exactly rk(g') vectors");
    for (const auto& fv : *f_choice) P.f.push_back(vec_to_mpz(fv));
  } else {
    for (int i = 0; i < igp_image.rank(); ++i)
      P.f.push_back(lift_through(igp.basis(), igp_proj_raw, igp_image.basis().row(i)));
    for (int i = 0; i < igz.rank(); ++i) P.f.push_back(igz.basis().row(i));
  }

  // validate f: inside the isolated derived lattice, independent, with the
  // central part spanning i(g' n z) up to finite index
  {
    for (int j = 0; j < P.b; ++j)
      if (!igp.contains(P.f[j]))
        throw ValidationError("f vector " + std::to_string(j + 1) +
                              " lies outside the isolator of the derived lattice");
    const Submodule fspan = Submodule::span(P.h, ZMat::from_rows(P.f, P.h));
    if (fspan.rank() != P.b) throw ValidationError("f vectors are dependent");
    add_prime_factors(bad, module_index(fspan, igp));
    std::vector<int> central;
    for (int j = 0; j < P.b; ++j)
      if (zc.contains(P.f[j])) central.push_back(j);
    if (int(central.size()) != P.b - P.k)
      throw ValidationError("f hint: expected exactly b-k vectors inside the centre");
    if (!central.empty()) {
      std::vector<std::vector<mpz_class>> rows;
      for (int j : central) rows.push_back(P.f[j]);
      const Submodule cspan = Submodule::span(P.h, ZMat::from_rows(rows, P.h));
      if (cspan.rank() != P.b - P.k)
        throw ValidationError("central f vectors are dependent");
      add_prime_factors(bad, module_index(cspan, igz));
    }
  }

  // ---- structure constants with respect to (e, f) ----
  const ZMat fmat = ZMat::from_rows(P.f, P.h);
  P.lambda.assign(size_t(P.a) * P.a * P.b, 0);
  for (int i = 0; i < P.a; ++i)
    for (int j = i + 1; j < P.a; ++j) {
      const auto br = L.bracket(P.e[i], P.e[j]);
      auto x = solve_left(fmat, br);
      if (!x) {
        std::ostringstream msg;
        msg << "bracket [e_" << i + 1 << ", e_" << j + 1
            << "] is not an integral combination of the f vectors";
        throw ValidationError(msg.str());
      }
      for (int k = 0; k < P.b; ++k) {
        if (!(*x)[k].fits_slong_p())
          throw MathError("structure constant out of machine range");
        const long long lam = (*x)[k].get_si();
        P.lambda[(size_t(i) * P.a + j) * P.b + k] = lam;
        P.lambda[(size_t(j) * P.a + i) * P.b + k] = -lam;
      }
    }

  P.bad_primes.assign(bad.begin(), bad.end());
  return P;
}

}  // namespace bizeta
