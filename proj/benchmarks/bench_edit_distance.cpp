#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>

#include "degradex/edit_distance.hpp"
#include "degradex/genome.hpp"
#include "degradex/rng.hpp"

namespace {

std::string random_sequence(std::uint64_t seed, std::size_t len) {
    degradex::Rng rng(seed);
    std::string s(len, 'A');
    for (char& c : s) c = degradex::kAlphabet[rng.uniform_below(4)];
    return s;
}

// Second operand is the first with ~1% scattered substitutions, the
// shape the trajectory code feeds the distance kernels.
std::string perturbed(const std::string& s, std::uint64_t seed) {
    degradex::Rng rng(seed);
    std::string t = s;
    for (char& c : t) {
        if (rng.uniform() < 0.01) c = degradex::kAlphabet[rng.uniform_below(4)];
    }
    return t;
}

void BM_hamming(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::string a = random_sequence(1, n);
    const std::string b = perturbed(a, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(degradex::hamming(a, b));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_hamming)->Arg(1 << 10)->Arg(1 << 15)->Arg(1 << 20);

void BM_levenshtein(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::string a = random_sequence(3, n);
    const std::string b = perturbed(a, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(degradex::levenshtein(a, b));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_levenshtein)->Arg(1 << 10)->Arg(1 << 13)->Arg(1 << 15)->Unit(benchmark::kMicrosecond);

void BM_levenshtein_banded(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::string a = random_sequence(5, n);
    const std::string b = perturbed(a, 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(degradex::levenshtein_banded(a, b, n / 16));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_levenshtein_banded)->Arg(1 << 13)->Arg(1 << 15)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
