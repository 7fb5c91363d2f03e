#include <benchmark/benchmark.h>

#include "bfl/boolfn.hpp"
#include "bfl/dist.hpp"
#include "bfl/fourier.hpp"
#include "bfl/influence.hpp"
#include "bfl/minors.hpp"
#include "bfl/parallel.hpp"
#include "bfl/pcsp.hpp"
#include "bfl/ptf.hpp"

using namespace bfl;

namespace {

BooleanFunction random_function(int n, std::uint64_t seed) {
    Rng rng(seed);
    BooleanFunction f(n);
    for (Tuple x = 0; x < f.size(); ++x) f.set(x, rng.next() & 1);
    return f;
}

void BM_Transform(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto f = random_function(n, 1);
    for (auto _ : state) benchmark::DoNotOptimize(transform(f, 0.3));
    state.SetComplexityN(std::int64_t{1} << n);
}
BENCHMARK(BM_Transform)->DenseRange(8, 16, 2)->Complexity();

void BM_InfluencesBiased(benchmark::State& state) {
    auto f = random_function(static_cast<int>(state.range(0)), 2);
    auto d = Distribution::biased(0.3);
    for (auto _ : state) benchmark::DoNotOptimize(influences(f, d));
}
BENCHMARK(BM_InfluencesBiased)->DenseRange(8, 16, 4);

void BM_ShapleyExact(benchmark::State& state) {
    auto f = random_function(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(shapley_influence_exact(f, 0));
}
BENCHMARK(BM_ShapleyExact)->DenseRange(6, 12, 3);

void BM_PreservationExact(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto f = random_function(2 * n, 4);
    auto sel = influential_selector(Distribution::biased(0.5), 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(condition_intersection_exact(f, sel));
}
BENCHMARK(BM_PreservationExact)->DenseRange(2, 4, 1);

void BM_PtfDegreeLp(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    auto f = family::majority(m);
    for (auto _ : state) benchmark::DoNotOptimize(ptf_degree_at_most(f, 1));
}
BENCHMARK(BM_PtfDegreeLp)->DenseRange(1, 3, 1);

void BM_PolymorphismsLe(benchmark::State& state) {
    auto t = builtin_template("le");
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_polymorphisms(t, m));
}
BENCHMARK(BM_PolymorphismsLe)->DenseRange(2, 4, 1);

}  // namespace

BENCHMARK_MAIN();
