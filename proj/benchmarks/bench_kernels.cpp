// Serial vs OpenMP kernel comparison: directional moment accumulation,
// the self-concordance certifier, and implication sampling.

#include "barrierlab/barrier.hpp"
#include "barrierlab/cascade/verify.hpp"
#include "barrierlab/moments.hpp"
#include "barrierlab/rng.hpp"

#include <benchmark/benchmark.h>

using namespace barrierlab;

namespace {

std::vector<geom::Simplex<double>> synthetic_simplices(std::size_t count, int dim) {
    Rng rng(kDefaultSeed);
    std::vector<geom::Simplex<double>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        geom::Simplex<double> s;
        for (int v = 0; v <= dim; ++v) {
            Vec<double> p(dim);
            for (auto& c : p) c = rng.uniform(-1.0, 1.0);
            s.verts.push_back(std::move(p));
        }
        s.volume = geom::simplex_volume(s);
        out.push_back(std::move(s));
    }
    return out;
}

void BM_DirectionalMomentsSerial(benchmark::State& state) {
    auto simplices = synthetic_simplices(static_cast<std::size_t>(state.range(0)), 3);
    Rng rng(1);
    auto h = rng.unit_vector(3);
    for (auto _ : state) {
        auto sums = moments::directional_raw_sums_serial(simplices, h);
        benchmark::DoNotOptimize(sums);
    }
}

void BM_DirectionalMomentsParallel(benchmark::State& state) {
    auto simplices = synthetic_simplices(static_cast<std::size_t>(state.range(0)), 3);
    Rng rng(1);
    auto h = rng.unit_vector(3);
    for (auto _ : state) {
        auto sums = moments::directional_raw_sums(simplices, h);
        benchmark::DoNotOptimize(sums);
    }
}

void BM_CertifierSerial(benchmark::State& state) {
    auto K = geom::standard_simplex<double>(3);
    barrier::CertifyOptions copt;
    copt.n_points = state.range(0);
    copt.n_dirs = 8;
    copt.parallel = false;
    for (auto _ : state) {
        auto rep = barrier::certify_self_concordance(K, copt);
        benchmark::DoNotOptimize(rep);
    }
}

void BM_CertifierParallel(benchmark::State& state) {
    auto K = geom::standard_simplex<double>(3);
    barrier::CertifyOptions copt;
    copt.n_points = state.range(0);
    copt.n_dirs = 8;
    copt.parallel = true;
    for (auto _ : state) {
        auto rep = barrier::certify_self_concordance(K, copt);
        benchmark::DoNotOptimize(rep);
    }
}

void BM_ImplicationSerial(benchmark::State& state) {
    for (auto _ : state) {
        auto rep = cascade::sample_implication(state.range(0), kDefaultSeed, false);
        benchmark::DoNotOptimize(rep);
    }
}

void BM_ImplicationParallel(benchmark::State& state) {
    for (auto _ : state) {
        auto rep = cascade::sample_implication(state.range(0), kDefaultSeed, true);
        benchmark::DoNotOptimize(rep);
    }
}

} // namespace

BENCHMARK(BM_DirectionalMomentsSerial)->Arg(4096)->Arg(65536);
BENCHMARK(BM_DirectionalMomentsParallel)->Arg(4096)->Arg(65536);
BENCHMARK(BM_CertifierSerial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CertifierParallel)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ImplicationSerial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ImplicationParallel)->Arg(20000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
