#include <cmath>
#include <map>
#include <string>

#include "doctest.h"

#include "degradex/errors.hpp"
#include "degradex/ngram.hpp"
#include "degradex/rng.hpp"
#include "support/synthetic.hpp"

using namespace degradex;

namespace {

// Map-based oracle for the dense counter.
std::map<std::string, std::uint64_t> count_words(const std::string& s, int n) {
    std::map<std::string, std::uint64_t> m;
    if (s.size() < static_cast<std::size_t>(n)) return m;
    for (std::size_t i = 0; i + n <= s.size(); ++i) ++m[s.substr(i, n)];
    return m;
}

}  // namespace

TEST_CASE("ngram distribution counts match a map oracle") {
    Rng rng(201);
    for (const int n : {1, 2, 3, 5, 8}) {
        const std::string s = synthetic::uniform_sequence(rng, 500);
        const NGramDistribution dist = ngram_distribution(s, n);
        const auto oracle = count_words(s, n);
        CHECK(dist.total == s.size() - n + 1);
        std::uint64_t sum = 0;
        for (std::size_t w = 0; w < dist.counts.size(); ++w) {
            const std::string word = word_string(n, w);
            const auto it = oracle.find(word);
            const std::uint64_t expected = it == oracle.end() ? 0 : it->second;
            REQUIRE(dist.counts[w] == expected);
            sum += dist.counts[w];
        }
        CHECK(sum == dist.total);
    }
}

TEST_CASE("ngram probabilities sum to one") {
    Rng rng(203);
    const std::string s = synthetic::uniform_sequence(rng, 300);
    const NGramDistribution dist = ngram_distribution(s, 3);
    double sum = 0;
    for (std::size_t w = 0; w < dist.counts.size(); ++w) sum += dist.probability(w);
    CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("ngram distribution argument checks") {
    CHECK_THROWS_AS(ngram_distribution("ACGT", 0), ConfigError);
    CHECK_THROWS_AS(ngram_distribution("ACGT", 9), ConfigError);
    CHECK_THROWS_AS(ngram_distribution("ACG", 4), GenomeTooShort);
    CHECK_NOTHROW(ngram_distribution("ACGT", 4));
}

TEST_CASE("word_string spells dense indices") {
    CHECK(word_string(1, 0) == "A");
    CHECK(word_string(1, 3) == "T");
    CHECK(word_string(2, 0) == "AA");
    CHECK(word_string(3, 63) == "TTT");
    CHECK(word_string(3, 0b000110) == "ACG");  // A=00, C=01, G=10 packed high-first
}

TEST_CASE("transition matrix rows are conditional distributions") {
    Rng rng(207);
    const std::string s = synthetic::markov2_sequence(rng, 2000, 0.5);
    const TransitionMatrix t = transition_matrix(s, 3);
    for (std::size_t ctx = 0; ctx < t.rows(); ++ctx) {
        if (t.row_empty(ctx)) continue;
        double sum = 0;
        for (int b = 0; b < 4; ++b) sum += t.prob(ctx, b);
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("joint distribution reconstructs from support and transitions") {
    // P(ctx . b) must equal support(ctx)/total * T(b | ctx) exactly.
    Rng rng(209);
    const std::string s = synthetic::markov2_sequence(rng, 3000, 0.4);
    const NGramDistribution joint = ngram_distribution(s, 3);
    const TransitionMatrix t = transition_matrix(s, 3);
    for (std::size_t ctx = 0; ctx < t.rows(); ++ctx) {
        for (int b = 0; b < 4; ++b) {
            const double lhs = joint.probability(ctx * 4 + b);
            const double rhs =
                t.row_support[ctx] / static_cast<double>(t.total) * t.prob(ctx, b);
            REQUIRE(std::abs(lhs - rhs) < 1e-12);
        }
    }
}

TEST_CASE("hellinger on hand-computed distributions") {
    // uniform pair vs point mass on AA (n=1 world): p=(1,0,0,0), q=(.25,.25,.25,.25)
    NGramDistribution p = NGramDistribution::from_counts(1, {4, 0, 0, 0});
    NGramDistribution q = NGramDistribution::from_counts(1, {1, 1, 1, 1});
    // H^2 = 1/2 * ((1-.5)^2 + 3*(0-.5)^2) = 1/2 * (0.25 + 0.75) = 0.5
    CHECK(hellinger(p, q) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(hellinger(p, p) == 0.0);
    CHECK(hellinger(q, q) == 0.0);
    CHECK(hellinger(p, q) == hellinger(q, p));

    NGramDistribution r = NGramDistribution::from_counts(1, {0, 0, 0, 7});
    CHECK(hellinger(p, r) == doctest::Approx(1.0).epsilon(1e-12));  // disjoint supports
}

TEST_CASE("hellinger rejects mismatched orders and stays within bounds") {
    NGramDistribution a = NGramDistribution::from_counts(1, {1, 1, 1, 1});
    Rng rng(211);
    const std::string s = synthetic::uniform_sequence(rng, 100);
    const NGramDistribution b = ngram_distribution(s, 2);
    CHECK_THROWS_AS(hellinger(a, b), OrderMismatch);

    const std::string u = synthetic::uniform_sequence(rng, 100);
    const NGramDistribution c = ngram_distribution(u, 2);
    const double h = hellinger(b, c);
    CHECK(h >= 0.0);
    CHECK(h <= 1.0);
}

TEST_CASE("entropy endpoints are exact") {
    // point mass
    NGramDistribution point = NGramDistribution::from_counts(3, [] {
        std::vector<std::uint64_t> c(64, 0);
        c[17] = 1234;
        return c;
    }());
    CHECK(entropy(point) == 0.0);

    // exactly uniform over 64 words
    NGramDistribution uniform = NGramDistribution::from_counts(3, std::vector<std::uint64_t>(64, 9));
    CHECK(std::abs(entropy(uniform) - std::log(64.0)) < 1e-12);
}

TEST_CASE("entropy never exceeds the maximum and max_entropy is n ln 4") {
    CHECK(max_entropy(1) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    CHECK(max_entropy(3) == doctest::Approx(std::log(64.0)).epsilon(1e-15));
    Rng rng(213);
    for (int trial = 0; trial < 20; ++trial) {
        const std::string s = synthetic::markov2_sequence(rng, 400, rng.uniform());
        for (const int n : {1, 2, 3}) {
            const double h = entropy(ngram_distribution(s, n));
            CHECK(h >= 0.0);
            CHECK(h <= max_entropy(n) + 1e-12);
        }
    }
}

TEST_CASE("skewed text has lower entropy than uniform text") {
    Rng rng(215);
    const std::string skewed = synthetic::markov2_sequence(rng, 5000, 0.6);
    const std::string flat = synthetic::uniform_sequence(rng, 5000);
    CHECK(entropy(ngram_distribution(skewed, 3)) < entropy(ngram_distribution(flat, 3)));
}

TEST_CASE("null_threshold is deterministic and anti-monotone in alpha") {
    Rng rng(217);
    const std::string s = synthetic::markov2_sequence(rng, 1500, 0.5);
    const double t05 = null_threshold(s, 3, 0.05, 200, 999);
    const double t05_again = null_threshold(s, 3, 0.05, 200, 999);
    CHECK(t05 == t05_again);
    const double t50 = null_threshold(s, 3, 0.50, 200, 999);
    CHECK(t05 >= t50);  // smaller alpha = farther into the tail
    CHECK(t05 > 0.0);
    CHECK(t05 < 1.0);
}

TEST_CASE("null_threshold rejects bad arguments") {
    CHECK_THROWS_AS(null_threshold("ACGTACGTACGT", 2, 0.0, 100, 1), ConfigError);
    CHECK_THROWS_AS(null_threshold("ACGTACGTACGT", 2, 1.0, 100, 1), ConfigError);
    CHECK_THROWS_AS(null_threshold("ACGTACGTACGT", 2, 0.05, 99, 1), ConfigError);
}
