#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>

#include "degradex/genome.hpp"
#include "degradex/ngram.hpp"
#include "degradex/rng.hpp"
#include "degradex/structure.hpp"

namespace {

std::string random_sequence(std::uint64_t seed, std::size_t len) {
    degradex::Rng rng(seed);
    std::string s(len, 'A');
    for (char& c : s) c = degradex::kAlphabet[rng.uniform_below(4)];
    return s;
}

void BM_count_repeats(benchmark::State& state) {
    const std::string s = random_sequence(11, 100000);
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(degradex::count_repeats(s, k));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}
BENCHMARK(BM_count_repeats)->Arg(8)->Arg(31)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_count_palindromes(benchmark::State& state) {
    const std::string s = random_sequence(13, 100000);
    const auto h = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(degradex::count_palindromes(s, h));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}
BENCHMARK(BM_count_palindromes)->Arg(2)->Arg(4)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_ngram_distribution(benchmark::State& state) {
    const std::string s = random_sequence(17, 100000);
    const auto n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(degradex::ngram_distribution(s, n));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}
BENCHMARK(BM_ngram_distribution)->Arg(1)->Arg(3)->Arg(8)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
