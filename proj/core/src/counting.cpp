#include "bizeta/counting.hpp"

#include <algorithm>
#include <thread>

#include "bizeta/errors.hpp"

namespace bizeta {

mpz_class EdtHistogram::total() const {
  mpz_class t = 0;
  for (const auto& [m, c] : counts) {
    (void)m;
    t += mpz_class(static_cast<unsigned long>(c));
  }
  return t;
}

void EdtHistogram::validate_mass() const {
  mpz_class expect;
  mpz_class pnn;
  mpz_ui_pow_ui(pnn.get_mpz_t(), static_cast<unsigned long>(params.p),
                static_cast<unsigned long>(size_t(nvars) * params.N));
  if (domain == DomainTag::Full || params.N == 0) {
    expect = pnn;
  } else {
    mpz_class prev;
    mpz_ui_pow_ui(prev.get_mpz_t(), static_cast<unsigned long>(params.p),
                  static_cast<unsigned long>(size_t(nvars) * (params.N - 1)));
    expect = pnn - prev;
  }
  if (total() != expect) throw MathError("histogram mass differs from the domain size");
}

CommutatorData commutator_data(const LatticeProfile& P) {
  CommutatorData cd;
  auto [A, B] = commutator_matrices(P);
  cd.A = std::move(A);
  cd.B = std::move(B);
  cd.uA = generic_rank(cd.A).u;
  cd.uB_half = generic_rank(cd.B).u_half;
  return cd;
}

namespace {

struct Range {
  long long offset = 0, stride = 1;
  long long count = 0;
};

// histogram keyed by packed type: key = sum type[i] * (N+1)^i
struct PackedHist {
  int len = 0;
  long long base = 1;  // N + 1
  std::vector<unsigned long long> c;

  PackedHist(int len_, int N) : len(len_), base(N + 1) {
    size_t size = 1;
    for (int i = 0; i < len; ++i) size *= size_t(base);
    c.assign(size, 0);
  }
  void merge(const PackedHist& o) {
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
  }
};

size_t pack_type(const std::vector<int>& t, long long base) {
  size_t key = 0;
  for (size_t i = t.size(); i-- > 0;) key = key * size_t(base) + size_t(t[i]);
  return key;
}

std::vector<int> unpack_type(size_t key, int len, long long base) {
  std::vector<int> t(len);
  for (int i = 0; i < len; ++i) {
    t[i] = int(key % size_t(base));
    key /= size_t(base);
  }
  return t;
}

mpz_class domain_size(const std::vector<Range>& ranges) {
  mpz_class n = 1;
  for (const auto& r : ranges) n *= to_mpz(r.count);
  return n;
}

std::vector<int> point_type(const LinearFormMatrix& m, int tuple_len,
                            const ResidueParams& rp, const std::vector<long long>& pt) {
  const auto full = elementary_divisor_type(evaluate(m, pt, rp), rp);
  return m.kind == LinearFormMatrix::Kind::B ? paired_type(full, tuple_len, rp)
                                             : truncate_type(full, tuple_len, rp);
}

// exhaustive sweep of a product of arithmetic progressions
void sweep(const LinearFormMatrix& m, int tuple_len, const ResidueParams& rp,
           const std::vector<Range>& ranges, bool primitive_filter,
           unsigned long long mult, long long first_lo, long long first_hi,
           PackedHist& out) {
  const int n = int(ranges.size());
  std::vector<long long> idx(n, 0);
  std::vector<long long> pt(n, 0);
  if (n == 0) return;  // empty products are handled by the caller
  idx[0] = first_lo;
  for (int i = 0; i < n; ++i) pt[i] = ranges[i].offset + idx[i] * ranges[i].stride;
  for (;;) {
    bool keep = true;
    if (primitive_filter) {
      keep = false;
      for (int i = 0; i < n && !keep; ++i) keep = pt[i] % rp.p != 0;
    }
    if (keep) out.c[pack_type(point_type(m, tuple_len, rp, pt), out.base)] += mult;
    // odometer
    int i = n - 1;
    for (;;) {
      if (i < 0) return;
      ++idx[i];
      const long long limit = (i == 0) ? first_hi : ranges[i].count;
      if (idx[i] < limit) {
        pt[i] = ranges[i].offset + idx[i] * ranges[i].stride;
        break;
      }
      idx[i] = (i == 0) ? first_lo : 0;
      pt[i] = ranges[i].offset + idx[i] * ranges[i].stride;
      --i;
    }
  }
}

void enumerate_domain(const LinearFormMatrix& m, int tuple_len, const ResidueParams& rp,
                      const std::vector<Range>& ranges, bool primitive_filter,
                      unsigned long long mult, const EnumOptions& opts, PackedHist& out) {
  const int n = int(ranges.size());
  if (n == 0) return;
  const long long c0 = ranges[0].count;
  int threads = std::max(1, opts.threads);
  threads = int(std::min<long long>(threads, c0));
  if (threads == 1) {
    sweep(m, tuple_len, rp, ranges, primitive_filter, mult, 0, c0, out);
    return;
  }
  std::vector<PackedHist> parts(threads, PackedHist(tuple_len, rp.N));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    const long long lo = c0 * t / threads;
    const long long hi = c0 * (t + 1) / threads;
    pool.emplace_back([&, t, lo, hi] {
      sweep(m, tuple_len, rp, ranges, primitive_filter, mult, lo, hi, parts[t]);
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& part : parts) out.merge(part);
}

void check_ceiling(const mpz_class& points, const EnumOptions& opts) {
  if (points > mpz_class(static_cast<unsigned long>(opts.ceiling)))
    throw CeilingError("enumeration of " + points.get_str() +
                       " points exceeds the ceiling of " + std::to_string(opts.ceiling));
}

EdtHistogram level_zero_histogram(const LinearFormMatrix& m, int tuple_len,
                                  const ResidueParams& rp, DomainTag domain) {
  // o/p^0 is the zero ring: a single point of valuation 0, all types zero
  EdtHistogram h{rp, m.kind, domain, m.nvars, tuple_len, {}};
  h.counts[std::vector<int>(tuple_len, 0)] = 1;
  return h;
}

EdtHistogram primitive_histogram(const LinearFormMatrix& m, int tuple_len,
                                 const ResidueParams& rp, const EnumOptions& opts);

// full histogram from primitive ones at levels 0..N: a non-primitive point
// is p * y' for a unique y' one level down, and the matrix is linear, so
// types shift by one
EdtHistogram full_from_primitive(const LinearFormMatrix& m, int tuple_len,
                                 const ResidueParams& rp, const EnumOptions& opts) {
  EdtHistogram h{rp, m.kind, DomainTag::Full, m.nvars, tuple_len, {}};
  for (int d = 0; d <= rp.N; ++d) {
    const ResidueParams sub(rp.p, rp.N - d);
    const EdtHistogram prim = d == rp.N
                                  ? level_zero_histogram(m, tuple_len, sub, DomainTag::Primitive)
                                  : primitive_histogram(m, tuple_len, sub, opts);
    for (const auto& [t, c] : prim.counts) {
      std::vector<int> shifted(t);
      for (int& x : shifted) x += d;
      h.counts[shifted] += c;
    }
  }
  return h;
}

EdtHistogram primitive_histogram(const LinearFormMatrix& m, int tuple_len,
                                 const ResidueParams& rp, const EnumOptions& opts) {
  if (rp.N == 0) return level_zero_histogram(m, tuple_len, rp, DomainTag::Primitive);
  EdtHistogram h{rp, m.kind, DomainTag::Primitive, m.nvars, tuple_len, {}};
  PackedHist packed(tuple_len, rp.N);
  const int n = m.nvars;
  if (opts.strategy == Strategy::Naive) {
    std::vector<Range> ranges(n, Range{0, 1, rp.pn});
    check_ceiling(domain_size(ranges), opts);
    enumerate_domain(m, tuple_len, rp, ranges, /*primitive_filter=*/true, 1, opts, packed);
  } else {
    // orbit representatives: first unit coordinate scaled to 1
    const long long pprev = rp.pn / rp.p;  // p^{N-1}
    const unsigned long long orbit = static_cast<unsigned long long>((rp.p - 1) * pprev);
    mpz_class reps = 0;
    for (int j = 0; j < n; ++j) {
      mpz_class r = 1;
      for (int i = 0; i < j; ++i) r *= to_mpz(pprev);
      for (int i = j + 1; i < n; ++i) r *= to_mpz(rp.pn);
      reps += r;
    }
    check_ceiling(reps, opts);
    for (int j = 0; j < n; ++j) {
      std::vector<Range> ranges;
      for (int i = 0; i < j; ++i) ranges.push_back(Range{0, rp.p, pprev});
      ranges.push_back(Range{1, 1, 1});
      for (int i = j + 1; i < n; ++i) ranges.push_back(Range{0, 1, rp.pn});
      enumerate_domain(m, tuple_len, rp, ranges, /*primitive_filter=*/false, orbit, opts,
                       packed);
    }
  }
  for (size_t key = 0; key < packed.c.size(); ++key)
    if (packed.c[key]) h.counts[unpack_type(key, tuple_len, packed.base)] = packed.c[key];
  return h;
}

}  // namespace

EdtHistogram edt_histogram(const LinearFormMatrix& m, int tuple_len,
                           const ResidueParams& rp, DomainTag domain,
                           const EnumOptions& opts) {
  if (rp.N == 0) return level_zero_histogram(m, tuple_len, rp, domain);
  if (domain == DomainTag::Primitive) return primitive_histogram(m, tuple_len, rp, opts);
  if (opts.strategy == Strategy::Orbit) return full_from_primitive(m, tuple_len, rp, opts);
  EdtHistogram h{rp, m.kind, DomainTag::Full, m.nvars, tuple_len, {}};
  const int n = m.nvars;
  if (n == 0) return level_zero_histogram(m, tuple_len, rp, domain);
  std::vector<Range> ranges(n, Range{0, 1, rp.pn});
  check_ceiling(domain_size(ranges), opts);
  PackedHist packed(tuple_len, rp.N);
  enumerate_domain(m, tuple_len, rp, ranges, /*primitive_filter=*/false, 1, opts, packed);
  for (size_t key = 0; key < packed.c.size(); ++key)
    if (packed.c[key]) h.counts[unpack_type(key, tuple_len, packed.base)] = packed.c[key];
  return h;
}

mpz_class CountVector::class_number() const {
  mpz_class k = 0;
  for (const auto& v : values) k += v;
  return k;
}

void check_gate(const LatticeProfile& P, long long p) {
  if (!is_prime(p)) throw GateError("p = " + std::to_string(p) + " is not prime");
  if (P.is_bad_prime(p))
    throw GateError("p = " + std::to_string(p) +
                    " is a bad prime of this lattice (divides a construction index)");
  const int c = P.lattice.declared_class;
  if (c >= 3 && p <= c)
    throw GateError("class " + std::to_string(c) + " requires p > " + std::to_string(c) +
                    ", got p = " + std::to_string(p));
}

namespace {

CountVector counts_from_histogram(const EdtHistogram& full, CountVector::Kind kind,
                                  int weight_rank, int size_exponent) {
  // values[i] = sum over types with |m| = u*N - i of count * p^{weight_rank*N - s*i},
  // where s = 2 for irr and 1 for cc; the division by p^{s*i} must be exact
  const int u = full.tuple_len, N = full.params.N;
  CountVector cv{kind, full.params, N, std::vector<mpz_class>(size_t(u) * N + 1)};
  std::vector<mpz_class> mass(size_t(u) * N + 1);
  for (const auto& [t, c] : full.counts) {
    int sum = 0;
    for (int x : t) sum += x;
    mass[size_t(u) * N - sum] += mpz_class(static_cast<unsigned long>(c));
  }
  mpz_class pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(full.params.p),
                static_cast<unsigned long>(size_t(weight_rank) * N));
  for (size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] == 0) continue;
    mpz_class v = mass[i] * pw;
    mpz_class div;
    mpz_ui_pow_ui(div.get_mpz_t(), static_cast<unsigned long>(full.params.p),
                  static_cast<unsigned long>(size_exponent * i));
    if (v % div != 0)
      throw MathError("count vector entry is not integral; formulas invalid here");
    cv.values[i] = v / div;
  }
  return cv;
}

}  // namespace

CountVector rep_counts_from(const EdtHistogram& full_b, int free_rank_r) {
  return counts_from_histogram(full_b, CountVector::Kind::Irr, free_rank_r, 2);
}

CountVector cc_counts_from(const EdtHistogram& full_a, int centre_rank_z) {
  return counts_from_histogram(full_a, CountVector::Kind::Cc, centre_rank_z, 1);
}

CountVector rep_counts(const LatticeProfile& P, const ResidueParams& rp,
                       const EnumOptions& opts) {
  check_gate(P, rp.p);
  const CommutatorData cd = commutator_data(P);
  return rep_counts_from(edt_histogram(cd.B, cd.uB_half, rp, DomainTag::Full, opts), P.r);
}

CountVector cc_counts(const LatticeProfile& P, const ResidueParams& rp,
                      const EnumOptions& opts) {
  check_gate(P, rp.p);
  const CommutatorData cd = commutator_data(P);
  return cc_counts_from(edt_histogram(cd.A, cd.uA, rp, DomainTag::Full, opts), P.z);
}

ShiftIdentityReport shift_identity_check(const LinearFormMatrix& m, int tuple_len,
                                         const ResidueParams& rp,
                                         const std::vector<int>& type,
                                         const EnumOptions& opts) {
  if (int(type.size()) != tuple_len)
    throw ValidationError("shift identity: type length mismatch");
  if (type.empty() || type.front() <= 0)
    throw ValidationError("shift identity requires m_1 > 0");
  for (int x : type)
    if (x > rp.N) throw ValidationError("shift identity: type entry exceeds N");
  const int m1 = type.front();
  const EdtHistogram full = edt_histogram(m, tuple_len, rp, DomainTag::Full, opts);
  const ResidueParams down(rp.p, rp.N - m1);
  const EdtHistogram prim = edt_histogram(m, tuple_len, down, DomainTag::Primitive, opts);
  std::vector<int> shifted(type);
  for (int& x : shifted) x -= m1;
  ShiftIdentityReport rep;
  auto itf = full.counts.find(type);
  rep.full_side = itf == full.counts.end() ? 0 : mpz_class(static_cast<unsigned long>(itf->second));
  auto itp = prim.counts.find(shifted);
  rep.primitive_side =
      itp == prim.counts.end() ? 0 : mpz_class(static_cast<unsigned long>(itp->second));
  rep.ok = rep.full_side == rep.primitive_side;
  return rep;
}

}  // namespace bizeta
