#include <benchmark/benchmark.h>

#include "charpoly/asymptotics.hpp"
#include "charpoly/dualities.hpp"
#include "charpoly/ensembles.hpp"
#include "charpoly/gap.hpp"
#include "charpoly/linalg.hpp"
#include "charpoly/painleve.hpp"

using namespace charpoly;

static void LogDeterminant(benchmark::State& state) {
    Rng rng(1);
    const ComplexMatrix a = sample_ginibre(int(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(logdet(a));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(LogDeterminant)->RangeMultiplier(2)->Range(8, 256)->Complexity();

static void SampleGinibre(benchmark::State& state) {
    Rng rng(2);
    for (auto _ : state) benchmark::DoNotOptimize(sample_ginibre(int(state.range(0)), rng));
}
BENCHMARK(SampleGinibre)->Arg(8)->Arg(64);

static void SampleTruncatedCUE(benchmark::State& state) {
    Rng rng(3);
    for (auto _ : state) benchmark::DoNotOptimize(sample_truncated_cue(int(state.range(0)) + 2, int(state.range(0)), rng));
}
BENCHMARK(SampleTruncatedCUE)->Arg(6)->Arg(32);

static void MonteCarloMoment(benchmark::State& state) {
    const ChargeConfiguration c{{Complex(0.5, 0.0)}, {2.0}};
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(mc_moment(Ginibre{8}, c, 10000, ++seed));
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(MonteCarloMoment)->Unit(benchmark::kMillisecond)->UseRealTime();

static void ExactMoment(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ginibre_moment_exact(int(state.range(0)), 2, 0.7));
}
BENCHMARK(ExactMoment)->Arg(50)->Arg(800);

static void ToeplitzMoment(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ginibre_moment_toeplitz(int(state.range(0)), 1.3, 0.6));
}
BENCHMARK(ToeplitzMoment)->Arg(4)->Arg(16)->Unit(benchmark::kMicrosecond);

static void PainleveMoment(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ginibre_moment_pv(4, 1.3, 0.6));
}
BENCHMARK(PainleveMoment)->Unit(benchmark::kMillisecond);

static void TruncatedCUEExact(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(tcue_moment_exact(8, 6, int(state.range(0)), 0.5));
}
BENCHMARK(TruncatedCUEExact)->Arg(1)->Arg(3);

static void GapCdf(benchmark::State& state) {
    const int k = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gap_cdf(GUE{k}, 0.7));
}
BENCHMARK(GapCdf)->Arg(1)->Arg(4);

static void SolvePIV(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve(PIV{1.0}, init_from_asymptote_p4(1.0, 1e4), -3.0));
}
BENCHMARK(SolvePIV)->Unit(benchmark::kMillisecond);

static void EdgeKernelDeterminant(benchmark::State& state) {
    EdgeVectors ev;
    for (int i = 0; i < state.range(0); ++i) {
        ev.u.emplace_back(0.1 * i, 0.2);
        ev.v.emplace_back(-0.1 * i, 0.3);
    }
    for (auto _ : state) benchmark::DoNotOptimize(edge_F_determinant(ev));
}
BENCHMARK(EdgeKernelDeterminant)->DenseRange(1, 4);

static void TwoChargeCorrelator(benchmark::State& state) {
    const int N = int(state.range(0));
    const ChargeConfiguration c{{Complex(0.1, 0.0), Complex(-0.2, 0.3)}, {2.0, 4.0}};
    for (auto _ : state) benchmark::DoNotOptimize(correlator_finiteN(GinibreWeight{N}, c));
}
BENCHMARK(TwoChargeCorrelator)->Arg(8)->Arg(128);

BENCHMARK_MAIN();
