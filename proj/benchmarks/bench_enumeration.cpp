#include <benchmark/benchmark.h>

#include <cmath>

#include "bizeta/counting.hpp"
#include "bizeta/oracle.hpp"
#include "bizeta/ratfun.hpp"
#include "bizeta/registry.hpp"
#include "bizeta/zeta.hpp"

using namespace bizeta;

namespace {

LatticeProfile builtin_profile(const std::string& name) {
  return profile(parse_lattice(*builtin_lattice_document(name)));
}

const LatticeProfile& f32_profile() {
  static const LatticeProfile p = builtin_profile("f32");
  return p;
}

const CommutatorData& f32_data() {
  static const CommutatorData cd = commutator_data(f32_profile());
  return cd;
}

}  // namespace

static void BM_DivisorType3x3(benchmark::State& state) {
  const ResidueParams rp(5, int(state.range(0)));
  RMat m(3, 3);
  long long v = 1;
  for (auto& x : m.a) x = (v = (v * 31 + 7) % rp.pn);
  for (auto _ : state) {
    benchmark::DoNotOptimize(elementary_divisor_type(m, rp));
  }
}
BENCHMARK(BM_DivisorType3x3)->Arg(1)->Arg(2)->Arg(3);

static void BM_FullHistogramNaive(benchmark::State& state) {
  const ResidueParams rp(5, int(state.range(0)));
  EnumOptions opts;
  opts.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        edt_histogram(f32_data().A, f32_data().uA, rp, DomainTag::Full, opts));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(std::pow(double(rp.pn), 3)));
}
BENCHMARK(BM_FullHistogramNaive)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_PrimitiveHistogramOrbit(benchmark::State& state) {
  const ResidueParams rp(5, int(state.range(0)));
  EnumOptions opts;
  opts.threads = 1;
  opts.strategy = Strategy::Orbit;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        edt_histogram(f32_data().B, f32_data().uB_half, rp, DomainTag::Primitive, opts));
  }
}
BENCHMARK(BM_PrimitiveHistogramOrbit)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_BivariateSeries(benchmark::State& state) {
  EnumOptions opts;
  opts.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bivariate_series(f32_profile(), 5, int(state.range(0)), CountVector::Kind::Cc, opts));
  }
}
BENCHMARK(BM_BivariateSeries)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_ConjugacySweep(benchmark::State& state) {
  const auto g = bch_group(builtin_profile("heisenberg"), 5, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(class_size_histogram(g));
  }
}
BENCHMARK(BM_ConjugacySweep)->Unit(benchmark::kMillisecond);

static void BM_ExpandClosedForm(benchmark::State& state) {
  const RatFun f = builtin_closed_form("f32", CountVector::Kind::Cc)->parsed();
  for (auto _ : state) {
    benchmark::DoNotOptimize(expand(f, 7, int(state.range(0))));
  }
}
BENCHMARK(BM_ExpandClosedForm)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
