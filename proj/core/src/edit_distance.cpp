#include "degradex/edit_distance.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <vector>

#include "degradex/errors.hpp"

namespace degradex {

std::uint64_t hamming(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) {
        throw LengthMismatch("hamming distance needs equal lengths, got " +
                             std::to_string(a.size()) + " and " + std::to_string(b.size()));
    }
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += a[i] != b[i];
    }
    return d;
}

namespace {

// Myers bit-parallel Levenshtein, block form. Each block holds the
// vertical deltas of 64 pattern rows as (Pv, Mv) bit pairs; a column
// update costs a constant number of word operations per block. Carries
// run from low bits to high bits only, so the padding rows above the
// last pattern row never influence the observed row.
struct Block {
    std::uint64_t pv = ~0ULL;
    std::uint64_t mv = 0;
};

std::uint64_t myers_distance(std::string_view pattern, std::string_view text) {
    const std::size_t m = pattern.size();
    const std::size_t n = text.size();
    const std::size_t words = (m + 63) / 64;

    // Symbols get dense ids on first sight; text-only symbols keep an
    // all-zero match mask.
    std::array<int, 256> sym{};
    sym.fill(-1);
    int nsym = 0;
    for (unsigned char c : pattern) {
        if (sym[c] < 0) sym[c] = nsym++;
    }
    const int pattern_syms = nsym;
    for (unsigned char c : text) {
        if (sym[c] < 0) sym[c] = nsym++;
    }

    std::vector<std::uint64_t> peq(static_cast<std::size_t>(pattern_syms) * words, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const int s = sym[static_cast<unsigned char>(pattern[i])];
        peq[static_cast<std::size_t>(s) * words + i / 64] |= 1ULL << (i % 64);
    }

    std::vector<Block> blocks(words);
    const std::size_t last = words - 1;
    const std::uint64_t observed = 1ULL << ((m - 1) % 64);
    std::uint64_t score = m;

    for (std::size_t j = 0; j < n; ++j) {
        const int s = sym[static_cast<unsigned char>(text[j])];
        const std::uint64_t* eq_row =
            s < pattern_syms ? peq.data() + static_cast<std::size_t>(s) * words : nullptr;

        // Row 0 sits below the D[0][j] = j boundary, so every column
        // enters the first block with a +1 horizontal delta.
        int hin = 1;
        for (std::size_t w = 0; w < words; ++w) {
            Block& bl = blocks[w];
            std::uint64_t eq = eq_row ? eq_row[w] : 0;
            const std::uint64_t xv = eq | bl.mv;
            if (hin < 0) eq |= 1;
            const std::uint64_t xh = (((eq & bl.pv) + bl.pv) ^ bl.pv) | eq;
            std::uint64_t ph = bl.mv | ~(xh | bl.pv);
            std::uint64_t mh = bl.pv & xh;

            int hout = 0;
            if (ph >> 63) hout = 1;
            else if (mh >> 63) hout = -1;

            if (w == last) {
                if (ph & observed) ++score;
                else if (mh & observed) --score;
            }

            ph <<= 1;
            mh <<= 1;
            if (hin < 0) mh |= 1;
            else if (hin > 0) ph |= 1;
            bl.pv = mh | ~(xv | ph);
            bl.mv = ph & xv;
            hin = hout;
        }
    }
    return score;
}

}  // namespace

std::uint64_t levenshtein(std::string_view a, std::string_view b) {
    if (a.empty()) return b.size();
    if (b.empty()) return a.size();
    // Fewer blocks when the shorter string is the pattern.
    if (a.size() > b.size()) std::swap(a, b);
    return myers_distance(a, b);
}

BandedDistance levenshtein_banded(std::string_view a, std::string_view b,
                                  std::uint64_t band) {
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    const std::uint64_t diff = m > n ? m - n : n - m;
    if (diff > band) return {band + 1, false};
    if (m == 0 || n == 0) return {diff, true};

    // Values above the band cannot stay <= band, so they saturate at
    // band + 1; that keeps the window narrow and arithmetic overflow-free.
    const std::uint64_t cap = band + 1;
    const std::size_t width = static_cast<std::size_t>(std::min<std::uint64_t>(
                                  2 * band, static_cast<std::uint64_t>(n))) +
                              1;
    std::vector<std::uint64_t> prev(width + 2, cap), curr(width + 2, cap);

    auto lo_of = [&](std::size_t i) -> std::size_t {
        return i > band ? i - static_cast<std::size_t>(band) : 0;
    };
    auto hi_of = [&](std::size_t i) -> std::size_t {
        const std::uint64_t h = static_cast<std::uint64_t>(i) + band;
        return h < n ? static_cast<std::size_t>(h) : n;
    };

    std::size_t prev_lo = 0;
    for (std::size_t j = 0; j <= hi_of(0); ++j) {
        prev[j] = std::min<std::uint64_t>(j, cap);
    }

    for (std::size_t i = 1; i <= m; ++i) {
        const std::size_t lo = lo_of(i);
        const std::size_t hi = hi_of(i);
        const std::size_t prev_hi = hi_of(i - 1);
        for (std::size_t j = lo; j <= hi; ++j) {
            std::uint64_t best = cap;
            if (j == 0) {
                // Left boundary: i deletions, inside the band only while i <= band.
                best = i;
            } else {
                // The diagonal predecessor always lies inside row i-1's window.
                best = prev[j - 1 - prev_lo] + (a[i - 1] != b[j - 1] ? 1 : 0);
                if (j > lo) best = std::min(best, curr[j - 1 - lo] + 1);
            }
            if (j <= prev_hi) {
                best = std::min(best, prev[j - prev_lo] + 1);
            }
            curr[j - lo] = std::min(best, cap);
        }
        std::swap(prev, curr);
        prev_lo = lo;
    }

    const std::uint64_t value = prev[n - prev_lo];
    if (value <= band) return {value, true};
    return {band + 1, false};
}

}  // namespace degradex
