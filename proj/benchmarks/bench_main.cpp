#include <benchmark/benchmark.h>

#include <domcone/acdo.hpp>
#include <domcone/aperture.hpp>
#include <domcone/random.hpp>

using namespace domcone;

static void BM_Eigvals(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    RandomStream rng(1, 0);
    const SymMatrix x = sample_goe(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(eigvals_sym(x));
}
BENCHMARK(BM_Eigvals)->DenseRange(2, 8, 2)->Arg(16);

static void BM_AcdoDominative(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const EllipticSetOracle o = oracle_from_operator(OperatorSpec::dominative(n, Exponent::finite(3.0)));
    RandomStream rng(2, 0);
    const SymMatrix x = sample_goe(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(acdo_eval(o, x));
}
BENCHMARK(BM_AcdoDominative)->DenseRange(2, 6, 2);

static void BM_AperturePucci(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ConvexBody body = pucci_body(n, 0.5, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(body_cone_aperture(body));
}
BENCHMARK(BM_AperturePucci)->DenseRange(2, 6, 2);
BENCHMARK_MAIN();
