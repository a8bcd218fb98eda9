#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>

#include "degradex/genome.hpp"
#include "degradex/mutation.hpp"
#include "degradex/rng.hpp"

namespace {

std::string random_sequence(std::uint64_t seed, std::size_t len) {
    degradex::Rng rng(seed);
    std::string s(len, 'A');
    for (char& c : s) c = degradex::kAlphabet[rng.uniform_below(4)];
    return s;
}

void BM_mutate_once_snp(benchmark::State& state) {
    const std::string s = random_sequence(21, static_cast<std::size_t>(state.range(0)));
    degradex::MutationConfig cfg;  // SNP-only defaults
    degradex::Rng rng(22);
    for (auto _ : state) {
        benchmark::DoNotOptimize(degradex::mutate_once(s, cfg, rng));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}
BENCHMARK(BM_mutate_once_snp)->Arg(30000)->Arg(1000000)->Unit(benchmark::kMicrosecond);

void BM_mutate_once_indel(benchmark::State& state) {
    const std::string s = random_sequence(23, static_cast<std::size_t>(state.range(0)));
    degradex::MutationConfig cfg;
    cfg.p_ins = 5e-4;
    cfg.p_del = 5e-4;
    degradex::Rng rng(24);
    for (auto _ : state) {
        benchmark::DoNotOptimize(degradex::mutate_once(s, cfg, rng));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}
BENCHMARK(BM_mutate_once_indel)->Arg(30000)->Arg(1000000)->Unit(benchmark::kMicrosecond);

// Whole-series cost at trajectory scale: 100 iterations, one snapshot.
void BM_degrade_100(benchmark::State& state) {
    const degradex::Genome g{"bench", "", random_sequence(25, 30000)};
    degradex::MutationConfig cfg;
    cfg.seed = 26;
    for (auto _ : state) {
        benchmark::DoNotOptimize(degradex::degrade(g, cfg, 100, {0, 100}));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 100));
}
BENCHMARK(BM_degrade_100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
