#include "bizeta/oracle.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "bizeta/errors.hpp"

namespace bizeta {

unsigned long long FiniteGroupTable::encode(const std::vector<long long>& x) const {
  unsigned long long idx = 0;
  for (size_t i = moduli.size(); i-- > 0;)
    idx = idx * static_cast<unsigned long long>(moduli[i]) +
          static_cast<unsigned long long>(x[i]);
  return idx;
}

std::vector<long long> FiniteGroupTable::decode(unsigned long long idx) const {
  std::vector<long long> x(moduli.size());
  for (size_t i = 0; i < moduli.size(); ++i) {
    x[i] = static_cast<long long>(idx % static_cast<unsigned long long>(moduli[i]));
    idx /= static_cast<unsigned long long>(moduli[i]);
  }
  return x;
}

void FiniteGroupTable::validate(unsigned long long full_order_cutoff, int samples) const {
  const std::vector<long long> id(moduli.size(), 0);
  for (unsigned long long i = 0; i < order; ++i) {
    const auto x = decode(i);
    if (mul(x, id) != x || mul(id, x) != x)
      throw MathError("group table: identity axiom fails");
    const auto xi = inv(x);
    if (mul(x, xi) != id || mul(xi, x) != id)
      throw MathError("group table: inverse axiom fails");
  }
  auto check_triple = [&](unsigned long long a, unsigned long long b,
                          unsigned long long c) {
    const auto x = decode(a), y = decode(b), z = decode(c);
    if (mul(mul(x, y), z) != mul(x, mul(y, z)))
      throw MathError("group table: associativity fails");
  };
  if (order <= full_order_cutoff) {
    for (unsigned long long a = 0; a < order; ++a)
      for (unsigned long long b = 0; b < order; ++b)
        for (unsigned long long c = 0; c < order; ++c) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<unsigned long long> pick(0, order - 1);
    for (int s = 0; s < samples; ++s) check_triple(pick(rng), pick(rng), pick(rng));
  }
}

FiniteGroupTable bch_group(const LatticeProfile& P, long long p, int N) {
  const int c = P.lattice.declared_class;
  if (c > 3) throw GateError("bch_group supports nilpotency class <= 3");
  if (c == 2 && p == 2)
    throw GateError("bch_group needs an odd prime at class 2 (1/2 must exist)");
  if (c == 3 && p < 5)
    throw GateError("bch_group needs p >= 5 at class 3 (1/12 must exist)");
  const ResidueParams rp(p, N);
  const LieLattice& L = P.lattice;
  const int h = L.rank;

  FiniteGroupTable g;
  g.model = "bch";
  g.moduli.assign(h, rp.pn);
  g.order = 1;
  for (int i = 0; i < h; ++i) {
    if (g.order > 1000000000000ULL / static_cast<unsigned long long>(rp.pn))
      throw CeilingError("bch_group: p^(hN) is out of range for explicit enumeration");
    g.order *= static_cast<unsigned long long>(rp.pn);
  }

  const long long inv2 = c >= 2 ? rp.inverse_unit(2) : 0;
  const long long inv12 = c >= 3 ? rp.inverse_unit(12) : 0;

  // bracket of coordinate vectors mod p^N, straight from structure constants;
  // the lattice is copied into the closure so the table owns its data
  auto lie = [L, rp, h](const std::vector<long long>& x, const std::vector<long long>& y) {
    std::vector<long long> out(h, 0);
    for (const auto& [ij, terms] : L.brackets) {
      const auto& [i, j] = ij;
      const long long cij = rp.reduce(x[i] * y[j] % rp.pn - x[j] * y[i] % rp.pn);
      if (cij == 0) continue;
      for (const auto& [k, lam] : terms)
        out[k] = rp.reduce(out[k] + cij * rp.reduce(lam) % rp.pn);
    }
    return out;
  };

  g.mul = [lie, rp, h, c, inv2, inv12](const std::vector<long long>& x,
                                       const std::vector<long long>& y) {
    std::vector<long long> z(h);
    for (int i = 0; i < h; ++i) z[i] = rp.reduce(x[i] + y[i]);
    if (c >= 2) {
      const auto xy = lie(x, y);
      for (int i = 0; i < h; ++i) z[i] = rp.reduce(z[i] + inv2 * xy[i] % rp.pn);
      if (c >= 3) {
        const auto xxy = lie(x, xy);
        const auto yxy = lie(y, xy);
        for (int i = 0; i < h; ++i)
          z[i] = rp.reduce(z[i] + inv12 * rp.reduce(xxy[i] - yxy[i]) % rp.pn);
      }
    }
    return z;
  };
  g.inv = [rp, h](const std::vector<long long>& x) {
    std::vector<long long> z(h);
    for (int i = 0; i < h; ++i) z[i] = rp.reduce(-x[i]);
    return z;
  };
  for (int i = 0; i < h; ++i) {
    std::vector<long long> e(h, 0);
    e[i] = 1;
    g.generators.push_back(std::move(e));
  }
  return g;
}

FiniteGroupTable heisenberg_matrix_group(long long m) {
  if (m < 2) throw ValidationError("heisenberg_matrix_group needs m >= 2");
  FiniteGroupTable g;
  g.model = "heisenberg-matrix";
  g.moduli = {m, m, m};  // (a, b, c) for I + a E12 + b E23 + c E13
  g.order = static_cast<unsigned long long>(m) * m * m;
  g.mul = [m](const std::vector<long long>& x, const std::vector<long long>& y) {
    return std::vector<long long>{(x[0] + y[0]) % m, (x[1] + y[1]) % m,
                                  (x[2] + y[2] + x[0] * y[1]) % m};
  };
  g.inv = [m](const std::vector<long long>& x) {
    return std::vector<long long>{(m - x[0]) % m, (m - x[1]) % m,
                                  ((x[0] * x[1] - x[2]) % m + m) % m};
  };
  g.generators = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  return g;
}

std::map<unsigned long long, mpz_class> class_size_histogram(const FiniteGroupTable& g,
                                                             unsigned long long ceiling) {
  if (g.order > ceiling)
    throw CeilingError("group of order " + std::to_string(g.order) +
                       " exceeds the orbit-enumeration ceiling");
  std::vector<std::vector<long long>> gens = g.generators;
  std::vector<std::vector<long long>> gens_inv;
  gens_inv.reserve(gens.size());
  for (const auto& s : gens) gens_inv.push_back(g.inv(s));

  std::vector<bool> visited(g.order, false);
  std::map<unsigned long long, mpz_class> hist;
  for (unsigned long long root = 0; root < g.order; ++root) {
    if (visited[root]) continue;
    unsigned long long size = 0;
    std::deque<unsigned long long> queue{root};
    visited[root] = true;
    while (!queue.empty()) {
      const auto idx = queue.front();
      queue.pop_front();
      ++size;
      const auto x = g.decode(idx);
      for (size_t s = 0; s < gens.size(); ++s) {
        const auto conj = g.mul(gens_inv[s], g.mul(x, gens[s]));
        const auto cidx = g.encode(conj);
        if (!visited[cidx]) {
          visited[cidx] = true;
          queue.push_back(cidx);
        }
      }
    }
    hist[size] += 1;
  }
  return hist;
}

CountVector conjugacy_profile(const FiniteGroupTable& g, const ResidueParams& rp,
                              unsigned long long ceiling) {
  const auto hist = class_size_histogram(g, ceiling);
  int max_i = 0;
  for (const auto& [size, cnt] : hist) {
    (void)cnt;
    unsigned long long s = size;
    int i = 0;
    while (s % static_cast<unsigned long long>(rp.p) == 0) {
      s /= static_cast<unsigned long long>(rp.p);
      ++i;
    }
    if (s != 1)
      throw MathError("conjugacy class size " + std::to_string(size) +
                      " is not a power of p");
    max_i = std::max(max_i, i);
  }
  CountVector cv{CountVector::Kind::Cc, rp, rp.N,
                 std::vector<mpz_class>(size_t(max_i) + 1)};
  for (const auto& [size, cnt] : hist) {
    unsigned long long s = size;
    int i = 0;
    while (s > 1) {
      s /= static_cast<unsigned long long>(rp.p);
      ++i;
    }
    cv.values[i] += cnt;
  }
  return cv;
}

mpz_class commuting_pairs_class_number(const FiniteGroupTable& g,
                                       unsigned long long ceiling) {
  if (g.order > ceiling / std::max<unsigned long long>(g.order, 1))
    throw CeilingError("pair enumeration of order " + std::to_string(g.order) +
                       " squared exceeds the ceiling");
  mpz_class pairs = 0;
  std::vector<std::vector<long long>> elems(g.order);
  for (unsigned long long i = 0; i < g.order; ++i) elems[i] = g.decode(i);
  for (unsigned long long i = 0; i < g.order; ++i)
    for (unsigned long long j = 0; j < g.order; ++j)
      if (g.mul(elems[i], elems[j]) == g.mul(elems[j], elems[i])) ++pairs;
  const mpz_class order(static_cast<unsigned long>(g.order));
  if (pairs % order != 0)
    throw MathError("commuting pair count is not divisible by the group order");
  return pairs / order;
}

CrtReport crt_multiplicativity_check(long long m1, long long m2,
                                     unsigned long long ceiling) {
  if (std::gcd(m1, m2) != 1)
    throw ValidationError("crt check needs coprime moduli");
  CrtReport rep;
  auto k_of = [](const std::map<unsigned long long, mpz_class>& h) {
    mpz_class k = 0;
    for (const auto& [size, cnt] : h) {
      (void)size;
      k += cnt;
    }
    return k;
  };
  const auto h1 = m1 == 1 ? std::map<unsigned long long, mpz_class>{{1, 1}}
                          : class_size_histogram(heisenberg_matrix_group(m1), ceiling);
  const auto h2 = m2 == 1 ? std::map<unsigned long long, mpz_class>{{1, 1}}
                          : class_size_histogram(heisenberg_matrix_group(m2), ceiling);
  const auto h12 = class_size_histogram(heisenberg_matrix_group(m1 * m2), ceiling);
  std::map<unsigned long long, mpz_class> conv;
  for (const auto& [s1, c1] : h1)
    for (const auto& [s2, c2] : h2) conv[s1 * s2] += c1 * c2;
  rep.sizes_ok = conv == h12;
  rep.k1 = k_of(h1);
  rep.k2 = k_of(h2);
  rep.k12 = k_of(h12);
  rep.class_number_ok = rep.k1 * rep.k2 == rep.k12;
  return rep;
}

}  // namespace bizeta
