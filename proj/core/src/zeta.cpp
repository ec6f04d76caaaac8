#include "bizeta/zeta.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "bizeta/errors.hpp"

namespace bizeta {

mpz_class TruncatedBivariateSeries::at(int N, int i) const {
  auto it = coeff.find({N, i});
  return it == coeff.end() ? mpz_class(0) : it->second;
}

TruncatedBivariateSeries bivariate_series(const LatticeProfile& P, long long p, int nmax,
                                          CountVector::Kind kind, const EnumOptions& opts) {
  check_gate(P, p);
  const CommutatorData cd = commutator_data(P);
  const bool irr = kind == CountVector::Kind::Irr;
  const LinearFormMatrix& mat = irr ? cd.B : cd.A;
  const int tuple_len = irr ? cd.uB_half : cd.uA;
  TruncatedBivariateSeries zs;
  zs.p = p;
  zs.nmax = nmax;
  zs.kind = kind;
  zs.coeff[{0, 0}] = 1;  // the trivial quotient at level 0
  for (int N = 1; N <= nmax; ++N) {
    const ResidueParams rp(p, N);
    const EdtHistogram full = edt_histogram(mat, tuple_len, rp, DomainTag::Full, opts);
    const CountVector cv = irr ? rep_counts_from(full, P.r) : cc_counts_from(full, P.z);
    for (int i = 0; i < int(cv.values.size()); ++i)
      if (cv.values[i] != 0) zs.coeff[{N, i}] = cv.values[i];
  }
  return zs;
}

std::vector<mpz_class> class_number_series(const TruncatedBivariateSeries& zs) {
  std::vector<mpz_class> b(zs.nmax + 1);
  for (const auto& [ni, c] : zs.coeff) b[ni.first] += c;
  return b;
}

bool TwistTruncation::all_stabilized() const {
  for (bool s : stabilized)
    if (!s) return false;
  return true;
}

TwistTruncation twist_coefficients(const LatticeProfile& P, long long p, int nmax,
                                   const EnumOptions& opts) {
  if (P.lattice.declared_class > 2)
    throw GateError("twist specialization is defined for class <= 2 only");
  if (nmax < 1) throw ValidationError("twist specialization needs nmax >= 1");
  const TruncatedBivariateSeries zs =
      bivariate_series(P, p, nmax, CountVector::Kind::Irr, opts);
  const int u = commutator_data(P).uB_half;
  TwistTruncation tw;
  tw.p = p;
  tw.nmax = nmax;
  tw.free_rank_r = P.r;
  auto a_val = [&](int i, int N) {
    // a_i(N) = coeff(N, i) * p^{2i - rN}, exact rational
    mpq_class v(zs.at(N, i));
    const int e = 2 * i - P.r * N;
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(e >= 0 ? e : -e));
    if (e >= 0)
      v *= pw;
    else
      v /= pw;
    return v;
  };
  for (int i = 0; i <= u * nmax; ++i) {
    tw.values.push_back(a_val(i, nmax));
    tw.stabilized.push_back(nmax >= 2 && a_val(i, nmax - 1) == tw.values.back());
  }
  return tw;
}

PoincareTruncation poincare_truncation(const LinearFormMatrix& m, int tuple_len,
                                       long long p, int nmax, const EnumOptions& opts) {
  PoincareTruncation pt;
  pt.kind = m.kind;
  pt.p = p;
  pt.nmax = nmax;
  pt.tuple_len = tuple_len;
  for (int N = 1; N <= nmax; ++N) {
    const ResidueParams rp(p, N);
    const EdtHistogram prim = edt_histogram(m, tuple_len, rp, DomainTag::Primitive, opts);
    for (const auto& [t, c] : prim.counts) {
      int sum = 0;
      for (int x : t) sum += x;
      pt.coeff[{N, sum}] += mpz_class(static_cast<unsigned long>(c));
    }
  }
  return pt;
}

namespace {

// nondecreasing tuples 0 <= m_1 <= ... <= m_u <= N with prescribed sum
void sorted_tuples(int u, int N, int sum, int min_first, std::vector<int>& cur,
                   const std::function<void(const std::vector<int>&)>& emit) {
  if (int(cur.size()) == u) {
    if (sum == 0) emit(cur);
    return;
  }
  for (int v = min_first; v <= N && v <= sum; ++v) {
    cur.push_back(v);
    sorted_tuples(u, N, sum - v, v, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

SumlemaReport sumlema_check(const LatticeProfile& P, long long p, int nmax,
                            CountVector::Kind kind, const EnumOptions& opts) {
  check_gate(P, p);
  const CommutatorData cd = commutator_data(P);
  const bool irr = kind == CountVector::Kind::Irr;
  const LinearFormMatrix& mat = irr ? cd.B : cd.A;
  const int u = irr ? cd.uB_half : cd.uA;

  // primitive histograms for levels 0..nmax
  std::vector<std::map<std::vector<int>, unsigned long long>> prim(nmax + 1);
  for (int N = 0; N <= nmax; ++N) {
    const ResidueParams rp(p, N);
    prim[N] = edt_histogram(mat, u, rp, DomainTag::Primitive, opts).counts;
  }
  const PoincareTruncation pt = poincare_truncation(mat, u, p, nmax, opts);

  // LHS(N, i) = sum over sorted m with |m| = uN - i of N^o_{N - m1, m - m1};
  // for u = 0 the empty type contributes the single point of the full domain
  auto lhs_at = [&](int N, int i) {
    if (N < 0) return mpz_class(0);
    if (u == 0) return mpz_class(i == 0 ? 1 : 0);
    mpz_class acc = 0;
    std::vector<int> cur;
    sorted_tuples(u, N, u * N - i, 0, cur, [&](const std::vector<int>& m) {
      const int m1 = m.front();
      std::vector<int> shifted(m);
      for (int& x : shifted) x -= m1;
      auto it = prim[N - m1].find(shifted);
      if (it != prim[N - m1].end()) acc += mpz_class(static_cast<unsigned long>(it->second));
    });
    return acc;
  };

  SumlemaReport rep;
  for (int N = 0; N <= nmax; ++N) {
    for (int i = 0; i <= u * std::max(N, 1); ++i) {
      // coefficient of S^N U^i in (1 - S) * LHS
      const mpz_class lhs = lhs_at(N, i) - lhs_at(N - 1, i);
      mpz_class rhs = 0;
      if (N == 0) {
        rhs = i == 0 ? 1 : 0;
      } else {
        auto it = pt.coeff.find({N, u * N - i});
        if (it != pt.coeff.end()) rhs = it->second;
      }
      if (lhs != rhs) {
        rep.ok = false;
        rep.level = N;
        rep.index = i;
        rep.lhs = lhs;
        rep.rhs = rhs;
        return rep;
      }
    }
  }
  return rep;
}

std::string series_to_text(const TruncatedBivariateSeries& zs,
                           const std::string& lattice_name) {
  nlohmann::ordered_json doc;
  doc["format"] = "bizeta-series";
  if (!lattice_name.empty()) doc["lattice"] = lattice_name;
  doc["p"] = zs.p;
  doc["Nmax"] = zs.nmax;
  doc["kind"] = zs.kind == CountVector::Kind::Irr ? "irr" : "cc";
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [ni, c] : zs.coeff)
    arr.push_back({ni.first, ni.second, c.get_str()});
  doc["coefficients"] = arr;
  return doc.dump(2) + "\n";
}

}  // namespace bizeta
