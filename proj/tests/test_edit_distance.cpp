#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"

#include "degradex/edit_distance.hpp"
#include "degradex/errors.hpp"
#include "degradex/rng.hpp"
#include "support/synthetic.hpp"

using namespace degradex;

namespace {

// Textbook full-matrix DP; the independent oracle for the bit-parallel path.
std::uint64_t dp_levenshtein(const std::string& a, const std::string& b) {
    std::vector<std::vector<std::uint64_t>> d(a.size() + 1,
                                              std::vector<std::uint64_t>(b.size() + 1));
    for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
    for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::uint64_t sub = d[i - 1][j - 1] + (a[i - 1] != b[j - 1] ? 1 : 0);
            d[i][j] = std::min({sub, d[i - 1][j] + 1, d[i][j - 1] + 1});
        }
    }
    return d[a.size()][b.size()];
}

}  // namespace

TEST_CASE("hamming counts mismatches and rejects unequal lengths") {
    CHECK(hamming("ACGT", "ACGT") == 0);
    CHECK(hamming("ACGT", "ACGA") == 1);
    CHECK(hamming("AAAA", "TTTT") == 4);
    CHECK(hamming("", "") == 0);
    CHECK_THROWS_AS(hamming("ACG", "ACGT"), LengthMismatch);
}

TEST_CASE("levenshtein on knowns") {
    CHECK(levenshtein("", "") == 0);
    CHECK(levenshtein("", "ACGT") == 4);
    CHECK(levenshtein("ACGT", "") == 4);
    CHECK(levenshtein("ACGT", "ACGT") == 0);
    CHECK(levenshtein("ACGT", "AGGT") == 1);
    CHECK(levenshtein("ACGT", "ACGGT") == 1);
    CHECK(levenshtein("GGGG", "ACGT") == 3);
    CHECK(levenshtein("kitten", "sitting") == 3);
}

TEST_CASE("levenshtein matches the DP oracle on short random pairs") {
    Rng rng(101);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t m = rng.uniform_below(65);
        const std::size_t n = rng.uniform_below(65);
        const std::string a = synthetic::uniform_sequence(rng, m);
        const std::string b = synthetic::uniform_sequence(rng, n);
        REQUIRE(levenshtein(a, b) == dp_levenshtein(a, b));
    }
}

TEST_CASE("levenshtein matches the DP oracle across the word boundary") {
    // lengths straddling 64 and 128 exercise multi-block carries
    Rng rng(103);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t m = 50 + rng.uniform_below(150);
        const std::size_t n = 50 + rng.uniform_below(150);
        std::string a = synthetic::uniform_sequence(rng, m);
        std::string b;
        if (trial % 2 == 0) {
            // correlated pair: mutate a few positions of a copy
            b = a.substr(0, n < a.size() ? n : a.size());
            for (int k = 0; k < 5 && !b.empty(); ++k) {
                b[rng.uniform_below(b.size())] = kAlphabet[rng.uniform_below(4)];
            }
        } else {
            b = synthetic::uniform_sequence(rng, n);
        }
        REQUIRE(levenshtein(a, b) == dp_levenshtein(a, b));
    }
}

TEST_CASE("levenshtein handles symbols present in only one string") {
    CHECK(levenshtein("AAAA", "bbbb") == 4);
    CHECK(levenshtein("xyz", "xz") == 1);
}

TEST_CASE("levenshtein bounds") {
    Rng rng(107);
    for (int trial = 0; trial < 100; ++trial) {
        const std::string a = synthetic::uniform_sequence(rng, 30 + rng.uniform_below(100));
        const std::string b = synthetic::uniform_sequence(rng, 30 + rng.uniform_below(100));
        const std::uint64_t d = levenshtein(a, b);
        const std::uint64_t lo =
            a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
        CHECK(d >= lo);
        CHECK(d <= std::max(a.size(), b.size()));
        CHECK(d == levenshtein(b, a));
        if (a.size() == b.size()) {
            CHECK(d <= hamming(a, b));
        }
    }
}

TEST_CASE("banded levenshtein is exact inside the band") {
    Rng rng(109);
    for (int trial = 0; trial < 200; ++trial) {
        const std::string a = synthetic::uniform_sequence(rng, rng.uniform_below(120));
        const std::string b = synthetic::uniform_sequence(rng, rng.uniform_below(120));
        const std::uint64_t truth = dp_levenshtein(a, b);
        for (const std::uint64_t band : {std::uint64_t(0), std::uint64_t(3),
                                         std::uint64_t(10), std::uint64_t(200)}) {
            const BandedDistance r = levenshtein_banded(a, b, band);
            if (truth <= band) {
                REQUIRE(r.exact);
                REQUIRE(r.value == truth);
            } else {
                REQUIRE_FALSE(r.exact);
                REQUIRE(r.value == band + 1);
                REQUIRE(r.value <= truth);
            }
        }
    }
}

TEST_CASE("banded levenshtein shortcuts on length gaps") {
    const BandedDistance r = levenshtein_banded("AAAAAAAAAA", "AA", 3);
    CHECK_FALSE(r.exact);
    CHECK(r.value == 4);
}
