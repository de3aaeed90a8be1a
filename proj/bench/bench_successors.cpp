// Serial vs OpenMP successor enumeration on random GF(2) networks.

#include <benchmark/benchmark.h>

#include <random>

#include "gsds/dynamics.hpp"

using namespace gsds;

namespace {

GlobalMap random_map(std::size_t n, std::uint32_t seed) {
    std::mt19937 rng(seed);
    const Field f(2);
    std::vector<Polynomial> coords;
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial p(f, n);
        for (int t = 0; t < 4; ++t) {
            Exponents e(n, 0);
            for (int v = 0; v < 3; ++v) {
                e[rng() % n] = 1;
            }
            p.add_term(1, e);
        }
        coords.push_back(p);
    }
    return {StateSpace::full(f, n), coords};
}

void BM_SuccessorsSerial(benchmark::State &state) {
    const auto map = random_map(static_cast<std::size_t>(state.range(0)), 7);
    std::vector<StateIndex> out(map.domain().size());
    for (auto _ : state) {
        kernels::successors_serial(map, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
}

void BM_SuccessorsParallel(benchmark::State &state) {
    const auto map = random_map(static_cast<std::size_t>(state.range(0)), 7);
    std::vector<StateIndex> out(map.domain().size());
    const auto workers = static_cast<int>(state.range(1));
    for (auto _ : state) {
        kernels::successors_parallel(map, out, workers);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
}

} // namespace

BENCHMARK(BM_SuccessorsSerial)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_SuccessorsParallel)->ArgsProduct({{12, 16, 20}, {2, 4, 8}});

BENCHMARK_MAIN();
