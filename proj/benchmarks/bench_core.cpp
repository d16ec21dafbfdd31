#include <benchmark/benchmark.h>

#include <genfinder/branch.hpp>
#include <genfinder/embed.hpp>
#include <genfinder/reduction.hpp>
#include <genfinder/rng.hpp>

using namespace genfinder;

namespace {

void BM_MatExpDense(benchmark::State& state) {
    const int n = int(state.range(0));
    Rng rng(7);
    CMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cxd(rng.gaussian(), rng.gaussian());
    for (auto _ : state) {
        CMat e = mat_exp(m);
        benchmark::DoNotOptimize(e.data());
    }
}
BENCHMARK(BM_MatExpDense)->Arg(16)->Arg(64)->Arg(128);

void BM_CheckConditions(benchmark::State& state) {
    const int d = int(state.range(0));
    const CMat l = sample_lindblad(d, 3);
    for (auto _ : state) {
        LindbladConditions c = check_conditions(l);
        benchmark::DoNotOptimize(c.ccp_margin);
    }
}
BENCHMARK(BM_CheckConditions)->Arg(2)->Arg(3)->Arg(4);

void BM_DecideMarkovian(benchmark::State& state) {
    const int d = int(state.range(0));
    const TransferMatrix e = make_transfer(d, mat_exp(sample_lindblad(d, 5)));
    for (auto _ : state) {
        GeneratorReport rep = decide_markovian(e);
        benchmark::DoNotOptimize(rep.verdict);
    }
}
BENCHMARK(BM_DecideMarkovian)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DecideEmbeddable(benchmark::State& state) {
    RMat t(2, 2);
    t << 0.9, 0.2, 0.1, 0.8;
    const StochasticMatrix s = make_stochastic(t);
    for (auto _ : state) {
        GeneratorReport rep = decide_embeddable(s);
        benchmark::DoNotOptimize(rep.verdict);
    }
}
BENCHMARK(BM_DecideEmbeddable);

void BM_BuildBundle(benchmark::State& state) {
    const SatInstance inst = parse_sat("p 1in3 3 1\n1 2 3 0\n");
    for (auto _ : state) {
        ReductionBundle b = build_reduction_bundle(inst);
        benchmark::DoNotOptimize(b.d);
    }
}
BENCHMARK(BM_BuildBundle)->Unit(benchmark::kMillisecond);

void BM_VerifyClassical(benchmark::State& state) {
    const SatInstance inst = parse_sat("p 1in3 5 4\n1 2 3 0\n1 2 4 0\n3 4 5 0\n1 2 5 0\n");
    for (auto _ : state) {
        ClassicalVerificationReport rep = verify_classical_reduction(inst);
        benchmark::DoNotOptimize(rep.agree);
    }
}
BENCHMARK(BM_VerifyClassical)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
