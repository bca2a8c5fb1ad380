#include <benchmark/benchmark.h>

#include "doublecat/fixtures.hpp"
#include "doublecat/groth.hpp"
#include "doublecat/random.hpp"

using namespace dc;

namespace {

DblRef base_for(std::int64_t objects) {
  RandomSpec spec;
  spec.seed = 7;
  spec.max_objects = static_cast<int>(objects);
  spec.edge_prob = 0.7;
  spec.max_squares = 400;
  return random_double_category(spec);
}

void BM_ValidateDoubleCategory(benchmark::State& st) {
  DblRef d = base_for(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(validate_double_category(*d));
  st.counters["squares"] = d->n_sq();
}
BENCHMARK(BM_ValidateDoubleCategory)->DenseRange(2, 5);

void BM_ComposeProfunctors(benchmark::State& st) {
  Rng rng(11);
  const int n = static_cast<int>(st.range(0));
  CatRef a = random_category(rng, n, 2, 0.6, "a");
  CatRef b = random_category(rng, n, 2, 0.6, "b");
  CatRef c = random_category(rng, n, 2, 0.6, "c");
  ProfRef u = random_profunctor(rng, a, b), v = random_profunctor(rng, b, c);
  for (auto _ : st) benchmark::DoNotOptimize(compose(u, v));
}
BENCHMARK(BM_ComposeProfunctors)->DenseRange(2, 5);

void BM_Representable(benchmark::State& st) {
  DblRef d = base_for(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(representable(d, 0));
}
BENCHMARK(BM_Representable)->DenseRange(2, 5);

void BM_GrothRepresentable(benchmark::State& st) {
  DblRef d = base_for(st.range(0));
  PshRef x = representable(d, 0).psh;
  for (auto _ : st) benchmark::DoNotOptimize(groth(x));
}
BENCHMARK(BM_GrothRepresentable)->DenseRange(2, 5);

void BM_DdelIdentity(benchmark::State& st) {
  DblRef d = base_for(st.range(0));
  DiscreteDoubleFibration p = *check_dfib(identity_double_functor(d)).fib;
  for (auto _ : st) benchmark::DoNotOptimize(ddel(p));
}
BENCHMARK(BM_DdelIdentity)->DenseRange(2, 5);

void BM_CounitEpsilon(benchmark::State& st) {
  DblRef d = base_for(st.range(0));
  PshRef x = representable(d, 0).psh;
  for (auto _ : st) benchmark::DoNotOptimize(counit_epsilon(x));
}
BENCHMARK(BM_CounitEpsilon)->DenseRange(2, 4);

void BM_RepresentationCheck(benchmark::State& st) {
  DblRef d = base_for(st.range(0));
  PshRef x = representable(d, 0).psh;
  for (auto _ : st) benchmark::DoNotOptimize(representation_check(x));
}
BENCHMARK(BM_RepresentationCheck)->DenseRange(2, 4);

void BM_YonedaEnumerationE1(benchmark::State& st) {
  DblRef d = fixture_e1();
  PshRef x = ddel(*check_dfib(identity_double_functor(d)).fib).psh;
  Representable r = representable(d, d->find_obj("xh''"));
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_transformations(r.psh, x));
}
BENCHMARK(BM_YonedaEnumerationE1);

}  // namespace

BENCHMARK_MAIN();
