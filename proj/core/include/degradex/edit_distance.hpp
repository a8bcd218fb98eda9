#pragma once

#include <cstdint>
#include <string_view>

namespace degradex {

// Number of mismatched positions between two equal-length strings.
// Throws LengthMismatch when |a| != |b|.
std::uint64_t hamming(std::string_view a, std::string_view b);

// Unit-cost Levenshtein distance (substitution, insertion, deletion all
// cost 1). Exact for arbitrary lengths; memory is O(min(m,n)/64 * n/64)
// words via the bit-parallel block algorithm, never a full DP matrix.
std::uint64_t levenshtein(std::string_view a, std::string_view b);

// Result of a banded computation. When `exact` is true, `value` is the
// true distance (it fit inside the band). Otherwise the true distance
// exceeds the band and `value` = band + 1 is a lower bound.
struct BandedDistance {
    std::uint64_t value = 0;
    bool exact = true;
};

// Levenshtein restricted to diagonals within `band` of the main diagonal.
// Exact whenever the true distance is <= band.
BandedDistance levenshtein_banded(std::string_view a, std::string_view b,
                                  std::uint64_t band);

}  // namespace degradex
