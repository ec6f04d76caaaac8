#include "bizeta/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "bizeta/errors.hpp"
#include "bizeta/oracle.hpp"
#include "bizeta/ratfun.hpp"
#include "bizeta/registry.hpp"
#include "bizeta/zeta.hpp"

namespace bizeta {

namespace {

constexpr unsigned long long kDefaultCeiling = 100'000'000ULL;

EnumOptions enum_options(const JobConfig& c) {
  EnumOptions opts;
  opts.ceiling = c.ceiling;
  if (opts.ceiling == 0) {
    if (const char* env = std::getenv("BIZETA_CEILING")) {
      try {
        opts.ceiling = std::stoull(env);
      } catch (...) {
        throw ParseError("BIZETA_CEILING is not a number");
      }
    }
    if (opts.ceiling == 0) opts.ceiling = kDefaultCeiling;
  }
  opts.threads = c.threads > 0 ? c.threads
                               : int(std::max(1u, std::thread::hardware_concurrency()));
  if (c.strategy == "naive")
    opts.strategy = Strategy::Naive;
  else if (c.strategy == "orbit")
    opts.strategy = Strategy::Orbit;
  else
    throw ParseError("unknown strategy '" + c.strategy + "' (naive|orbit)");
  return opts;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_document(const JobConfig& c, const std::string& text, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path);
  if (!f) throw ParseError("cannot write '" + c.out_path + "'");
  f << text;
}

long long single_prime(const JobConfig& c) {
  if (c.primes.size() != 1)
    throw ParseError("this command needs exactly one --prime");
  return c.primes.front();
}

std::vector<CountVector::Kind> kinds_for(const JobConfig& c) {
  if (c.kind.empty() || c.kind == "both")
    return {CountVector::Kind::Irr, CountVector::Kind::Cc};
  if (c.kind == "irr") return {CountVector::Kind::Irr};
  if (c.kind == "cc") return {CountVector::Kind::Cc};
  throw ParseError("unknown kind '" + c.kind + "'");
}

const char* kind_name(CountVector::Kind k) {
  return k == CountVector::Kind::Irr ? "irr" : "cc";
}

std::string univariate_document(const std::string& lattice, long long p, int nmax,
                                const std::string& kind,
                                const std::vector<std::string>& values,
                                const std::vector<int>& unstabilized) {
  nlohmann::ordered_json doc;
  doc["format"] = "bizeta-series";
  doc["lattice"] = lattice;
  doc["p"] = p;
  doc["Nmax"] = nmax;
  doc["kind"] = kind;
  auto arr = nlohmann::ordered_json::array();
  for (int n = 0; n < int(values.size()); ++n) arr.push_back({n, 0, values[n]});
  doc["coefficients"] = arr;
  if (!unstabilized.empty()) doc["unstabilized"] = unstabilized;
  return doc.dump(2) + "\n";
}

int cmd_compute(const JobConfig& c, std::ostream& out, std::ostream& err) {
  const LieLattice L = load_lattice(c.lattice);
  const LatticeProfile P = profile(L);
  const long long p = single_prime(c);
  const EnumOptions opts = enum_options(c);
  const std::string kind = c.kind.empty() ? "irr" : c.kind;
  if (kind == "irr" || kind == "cc") {
    const auto zs = bivariate_series(
        P, p, c.nmax, kind == "irr" ? CountVector::Kind::Irr : CountVector::Kind::Cc,
        opts);
    write_document(c, series_to_text(zs, L.name), out);
    return 0;
  }
  if (kind == "k") {
    const auto zs = bivariate_series(P, p, c.nmax, CountVector::Kind::Irr, opts);
    const auto b = class_number_series(zs);
    std::vector<std::string> vals;
    for (const auto& v : b) vals.push_back(v.get_str());
    write_document(c, univariate_document(L.name, p, c.nmax, "k", vals, {}), out);
    return 0;
  }
  if (kind == "twist") {
    const auto tw = twist_coefficients(P, p, c.nmax, opts);
    std::vector<std::string> vals;
    std::vector<int> unstab;
    for (int i = 0; i < int(tw.values.size()); ++i) {
      vals.push_back(tw.values[i].get_str());
      if (!tw.stabilized[i]) unstab.push_back(i);
    }
    write_document(c, univariate_document(L.name, p, c.nmax, "twist", vals, unstab), out);
    if (!unstab.empty())
      err << "twist: " << unstab.size()
          << " coefficient(s) not stabilized within Nmax; reported as partial\n";
    return 0;
  }
  throw ParseError("unknown kind '" + kind + "' for compute");
}

int cmd_verify(const JobConfig& c, std::ostream& out, std::ostream& err) {
  const LieLattice L = load_lattice(c.lattice);
  const LatticeProfile P = profile(L);
  const EnumOptions opts = enum_options(c);
  if (c.primes.empty()) throw ParseError("verify needs at least one --prime");
  if (!c.ratfun_path.empty() && c.kind.empty())
    throw ParseError("verify with --ratfun needs --kind (a form matches one kind)");
  bool all_ok = true;
  long long checked = 0;
  for (const long long p : c.primes) {
    for (const auto kind : kinds_for(c)) {
      RatFun form = [&] {
        if (!c.ratfun_path.empty()) return RatFun::parse(read_file(c.ratfun_path));
        const auto cf = builtin_closed_form(L.name, kind);
        if (!cf)
          throw ParseError("no registered closed form for '" + L.name +
                           "'; pass --ratfun");
        return cf->parsed();
      }();
      const auto closed = expand(form, p, c.nmax);
      const auto enumerated = bivariate_series(P, p, c.nmax, kind, opts);
      std::set<std::pair<int, int>> keys;
      for (const auto& [ni, v] : closed.coeff) {
        (void)v;
        keys.insert(ni);
      }
      for (const auto& [ni, v] : enumerated.coeff) {
        (void)v;
        keys.insert(ni);
      }
      for (const auto& [N, i] : keys) {
        const mpz_class le = enumerated.at(N, i), re = closed.at(N, i);
        const bool ok = le == re;
        all_ok = all_ok && ok;
        ++checked;
        out << (ok ? "ok      " : "MISMATCH") << " p=" << p << " kind=" << kind_name(kind)
            << " N=" << N << " i=" << i << " enumerated=" << le.get_str()
            << " closed=" << re.get_str() << "\n";
      }
    }
  }
  out << "verify: " << (all_ok ? "PASS" : "FAIL") << " (" << checked
      << " coefficients compared)\n";
  if (!all_ok) err << "verify: enumerated series differs from the closed form\n";
  return all_ok ? 0 : 1;
}

int cmd_funeq(const JobConfig& c, std::ostream& out, std::ostream&) {
  struct Item {
    std::string label;
    RatFun form;
    int h;
  };
  std::vector<Item> items;
  if (!c.ratfun_path.empty()) {
    if (c.h < 0) throw ParseError("funeq with --ratfun needs --h");
    items.push_back({c.ratfun_path, RatFun::parse(read_file(c.ratfun_path)), c.h});
  } else if (!c.lattice.empty()) {
    for (const auto kind : kinds_for(c)) {
      const auto cf = builtin_closed_form(load_lattice(c.lattice).name, kind);
      if (!cf) throw ParseError("no registered closed form for '" + c.lattice + "'");
      items.push_back({c.lattice + ":" + kind_name(kind), cf->parsed(),
                       c.h >= 0 ? c.h : cf->h});
    }
  } else {
    throw ParseError("funeq needs --ratfun or --lattice");
  }
  bool all_ok = true;
  for (const auto& item : items) {
    const auto rep = functional_equation_check(item.form, item.h);
    all_ok = all_ok && rep.ok;
    out << (rep.ok ? "PASS" : "FAIL") << " funeq h=" << item.h << " " << item.label;
    if (!rep.ok) out << " residual=" << rep.residual.to_string();
    out << "\n";
  }
  return all_ok ? 0 : 1;
}

int cmd_fit(const JobConfig& c, std::ostream& out, std::ostream& err) {
  const LieLattice L = load_lattice(c.lattice);
  const LatticeProfile P = profile(L);
  const long long p = single_prime(c);
  if (c.denominator.empty()) throw ParseError("fit needs --denominator");
  const auto kind =
      c.kind == "cc" ? CountVector::Kind::Cc : CountVector::Kind::Irr;
  const auto zs = bivariate_series(P, p, c.nmax, kind, enum_options(c));
  try {
    const RatFun fitted = fit(zs, RatFun::parse(c.denominator));
    out << "fit: PASS numerator=" << fitted.num().to_string() << "\n";
    out << "ratfun: " << fitted.to_string() << "\n";
    return 0;
  } catch (const FitError& e) {
    if (!e.inconsistent) throw;
    err << "fit: FAIL " << e.what() << "\n";
    return 1;
  }
}

int cmd_oracle(const JobConfig& c, std::ostream& out, std::ostream& err) {
  if (c.crt_m1 > 0 || c.crt_m2 > 0) {
    const auto rep =
        crt_multiplicativity_check(c.crt_m1, c.crt_m2, enum_options(c).ceiling);
    out << (rep.ok() ? "PASS" : "FAIL") << " crt " << c.crt_m1 << " " << c.crt_m2
        << ": k(" << c.crt_m1 << ")=" << rep.k1.get_str() << " k(" << c.crt_m2
        << ")=" << rep.k2.get_str() << " k(" << c.crt_m1 * c.crt_m2
        << ")=" << rep.k12.get_str() << "\n";
    return rep.ok() ? 0 : 1;
  }
  const LieLattice L = load_lattice(c.lattice);
  const LatticeProfile P = profile(L);
  const long long p = single_prime(c);
  const EnumOptions opts = enum_options(c);
  bool all_ok = true;
  for (int N = 1; N <= c.nmax; ++N) {
    const ResidueParams rp(p, N);
    const FiniteGroupTable g = bch_group(P, p, N);
    const CountVector direct = conjugacy_profile(g, rp, opts.ceiling);
    const CountVector counted = cc_counts(P, rp, opts);
    bool ok = true;
    const size_t len = std::max(direct.values.size(), counted.values.size());
    for (size_t i = 0; i < len; ++i) {
      const mpz_class a = i < direct.values.size() ? direct.values[i] : 0;
      const mpz_class b = i < counted.values.size() ? counted.values[i] : 0;
      ok = ok && a == b;
    }
    const mpz_class k_direct = direct.class_number();
    const mpz_class k_counted = counted.class_number();
    ok = ok && k_direct == k_counted;
    all_ok = all_ok && ok;
    out << (ok ? "PASS" : "FAIL") << " oracle " << L.name << " p=" << p << " N=" << N
        << " k=" << k_direct.get_str() << "\n";
    if (!ok) {
      err << "oracle: explicit conjugacy profile differs from the counted one at N=" << N
          << "\n";
    }
  }
  return all_ok ? 0 : 1;
}

int cmd_identity(const JobConfig& c, std::ostream& out, std::ostream& err) {
  const LieLattice L = load_lattice(c.lattice);
  const LatticeProfile P = profile(L);
  const long long p = single_prime(c);
  const EnumOptions opts = enum_options(c);
  check_gate(P, p);
  if (c.check == "sumlema") {
    bool all_ok = true;
    for (const auto kind : kinds_for(c)) {
      const auto rep = sumlema_check(P, p, c.nmax, kind, opts);
      all_ok = all_ok && rep.ok;
      out << (rep.ok ? "PASS" : "FAIL") << " sumlema " << L.name << " p=" << p
          << " nmax=" << c.nmax << " kind=" << kind_name(kind);
      if (!rep.ok)
        out << " first mismatch at (N=" << rep.level << ", i=" << rep.index
            << "): lhs=" << rep.lhs.get_str() << " rhs=" << rep.rhs.get_str();
      out << "\n";
    }
    return all_ok ? 0 : 1;
  }
  if (c.check == "shift") {
    const CommutatorData cd = commutator_data(P);
    bool all_ok = true;
    long long checked = 0;
    for (const auto kind : kinds_for(c)) {
      const bool irr = kind == CountVector::Kind::Irr;
      const LinearFormMatrix& mat = irr ? cd.B : cd.A;
      const int u = irr ? cd.uB_half : cd.uA;
      // primitive histograms once per level; each type is then a lookup
      std::vector<std::map<std::vector<int>, unsigned long long>> prim(c.nmax + 1);
      for (int N = 0; N <= c.nmax; ++N)
        prim[N] =
            edt_histogram(mat, u, ResidueParams(p, N), DomainTag::Primitive, opts).counts;
      for (int N = 1; N <= c.nmax; ++N) {
        const ResidueParams rp(p, N);
        const auto full = edt_histogram(mat, u, rp, DomainTag::Full, opts);
        for (const auto& [type, cnt] : full.counts) {
          if (type.empty() || type.front() < 1) continue;
          const int m1 = type.front();
          std::vector<int> shifted(type);
          for (int& x : shifted) x -= m1;
          auto it = prim[N - m1].find(shifted);
          const unsigned long long other = it == prim[N - m1].end() ? 0 : it->second;
          all_ok = all_ok && cnt == other;
          ++checked;
          if (cnt != other)
            err << "shift identity fails for kind=" << kind_name(kind) << " N=" << N
                << " full=" << cnt << " primitive=" << other << "\n";
        }
      }
    }
    out << (all_ok ? "PASS" : "FAIL") << " shift " << L.name << " p=" << p
        << " nmax=" << c.nmax << " (" << checked << " types checked)\n";
    return all_ok ? 0 : 1;
  }
  throw ParseError("identity needs --check sumlema|shift");
}

}  // namespace

LieLattice load_lattice(const std::string& name_or_path) {
  if (name_or_path.empty()) throw ParseError("no lattice given");
  if (const auto doc = builtin_lattice_document(name_or_path))
    return parse_lattice(*doc);
  return parse_lattice(read_file(name_or_path));
}

int run_job(const JobConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.nmax < 0) throw ParseError("--nmax must be nonnegative");
    for (const long long p : config.primes)
      if (p < 2) throw ParseError("--prime must be at least 2");
    if (config.command == "compute") return cmd_compute(config, out, err);
    if (config.command == "verify") return cmd_verify(config, out, err);
    if (config.command == "funeq") return cmd_funeq(config, out, err);
    if (config.command == "fit") return cmd_fit(config, out, err);
    if (config.command == "oracle") return cmd_oracle(config, out, err);
    if (config.command == "identity") return cmd_identity(config, out, err);
    err << "unknown command '" << config.command << "'\n";
    return 2;
  } catch (const FitError& e) {
    err << "error: " << e.what() << "\n";
    return e.inconsistent ? 1 : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bizeta
