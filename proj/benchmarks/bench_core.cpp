// Microbenchmarks for the hot paths: row reduction, algebra compilation,
// Hom spaces, resolutions, and full enumeration.
#include <benchmark/benchmark.h>

#include "qhat/corpus.hpp"
#include "qhat/decompose.hpp"
#include "qhat/parts.hpp"

using namespace qhat;

namespace {

Mat random_matrix(std::size_t n, Gf gf, std::uint64_t seed) {
    Rng rng(seed);
    Mat m(n, n, gf);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.below(gf.p());
    return m;
}

void BM_rref(benchmark::State& state) {
    Gf gf(101);
    Mat m = random_matrix(static_cast<std::size_t>(state.range(0)), gf, 42);
    for (auto _ : state) benchmark::DoNotOptimize(rref(m).rank);
}
BENCHMARK(BM_rref)->Arg(32)->Arg(96);

void BM_build_algebra(benchmark::State& state) {
    QuiverSpec spec = parse_spec(corpus_source("EX4"));
    for (auto _ : state) benchmark::DoNotOptimize(build_algebra(spec)->dim());
}
BENCHMARK(BM_build_algebra);

void BM_hom_basis(benchmark::State& state) {
    AlgebraPtr alg = corpus_algebra("EX3");
    Module p1 = standard_module(alg, StandardKind::Projective, 0);
    Module i2 = standard_module(alg, StandardKind::Injective, 1);
    for (auto _ : state) benchmark::DoNotOptimize(hom_basis(p1, i2).size());
}
BENCHMARK(BM_hom_basis);

void BM_resolution(benchmark::State& state) {
    AlgebraPtr alg = corpus_algebra("EX4");
    Module s = standard_module(alg, StandardKind::Simple, 0);
    for (auto _ : state) {
        Resolution res = resolve(s);
        benchmark::DoNotOptimize(res.computed_steps());
    }
}
BENCHMARK(BM_resolution);

void BM_enumerate(benchmark::State& state) {
    AlgebraPtr alg = corpus_algebra("EX3");
    for (auto _ : state) {
        IndecSet s = enumerate_indecomposables(alg);
        benchmark::DoNotOptimize(s.size());
    }
}
BENCHMARK(BM_enumerate);

void BM_hom_digraph(benchmark::State& state) {
    AlgebraPtr alg = corpus_algebra("EX3");
    IndecSet s = enumerate_indecomposables(alg);
    for (auto _ : state) {
        HomDigraph g(s);
        benchmark::DoNotOptimize(g.size());
    }
}
BENCHMARK(BM_hom_digraph);

} // namespace

BENCHMARK_MAIN();
