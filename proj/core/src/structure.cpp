#include "degradex/structure.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "degradex/errors.hpp"
#include "degradex/rng.hpp"

namespace degradex {

namespace {

struct U128Hash {
    std::size_t operator()(unsigned __int128 v) const {
        std::uint64_t lo = static_cast<std::uint64_t>(v);
        std::uint64_t hi = static_cast<std::uint64_t>(v >> 64);
        std::uint64_t x = lo ^ (hi * 0x9e3779b97f4a7c15ULL);
        return static_cast<std::size_t>(splitmix64(x));
    }
};

template <typename Map, typename MakeKey>
RepeatProfile tally_windows(std::string_view bases, std::size_t k, MakeKey make_key) {
    Map occurrences;
    occurrences.reserve(bases.size() - k + 1);
    for (std::size_t p = 0; p + k <= bases.size(); ++p) {
        ++occurrences[make_key(p)];
    }
    RepeatProfile profile;
    profile.k = k;
    for (const auto& [word, count] : occurrences) {
        if (count >= 2) {
            profile.windows += count;
            ++profile.distinct;
        }
    }
    return profile;
}

}  // namespace

RepeatProfile count_repeats(std::string_view bases, std::size_t k) {
    if (k < 1) throw ConfigError("repeat length k must be at least 1");
    if (k > bases.size()) {
        throw GenomeTooShort("k = " + std::to_string(k) +
                             " exceeds sequence length " + std::to_string(bases.size()));
    }

    if (k <= 32) {
        // 2-bit packing keeps the key exact, not just a hash.
        std::vector<std::uint64_t> packed(bases.size() - k + 1);
        const std::uint64_t mask =
            k == 32 ? ~0ULL : (std::uint64_t{1} << (2 * k)) - 1;
        std::uint64_t word = 0;
        for (std::size_t i = 0; i < bases.size(); ++i) {
            word = ((word << 2) | static_cast<std::uint64_t>(base_index(bases[i]))) & mask;
            if (i + 1 >= k) packed[i + 1 - k] = word;
        }
        std::unordered_map<std::uint64_t, std::uint32_t> occurrences;
        occurrences.reserve(packed.size());
        for (const std::uint64_t w : packed) ++occurrences[w];
        RepeatProfile profile;
        profile.k = k;
        for (const auto& [w, count] : occurrences) {
            if (count >= 2) {
                profile.windows += count;
                ++profile.distinct;
            }
        }
        return profile;
    }
    if (k <= 64) {
        unsigned __int128 word = 0;
        const int shift = static_cast<int>(2 * k);
        const unsigned __int128 mask =
            shift == 128 ? ~static_cast<unsigned __int128>(0)
                         : (static_cast<unsigned __int128>(1) << shift) - 1;
        std::vector<unsigned __int128> packed(bases.size() - k + 1);
        for (std::size_t i = 0; i < bases.size(); ++i) {
            word = ((word << 2) |
                    static_cast<unsigned __int128>(base_index(bases[i]))) &
                   mask;
            if (i + 1 >= k) packed[i + 1 - k] = word;
        }
        std::unordered_map<unsigned __int128, std::uint32_t, U128Hash> occurrences;
        occurrences.reserve(packed.size());
        for (const unsigned __int128 w : packed) ++occurrences[w];
        RepeatProfile profile;
        profile.k = k;
        for (const auto& [w, count] : occurrences) {
            if (count >= 2) {
                profile.windows += count;
                ++profile.distinct;
            }
        }
        return profile;
    }
    return tally_windows<std::unordered_map<std::string, std::uint32_t>>(
        bases, k, [&](std::size_t p) { return std::string(bases.substr(p, k)); });
}

PalindromeProfile count_palindromes(std::string_view bases, std::size_t h) {
    if (h < 1) throw ConfigError("palindrome half-length h must be at least 1");
    if (2 * h > bases.size()) {
        throw GenomeTooShort("half-length " + std::to_string(h) +
                             " needs a sequence of at least " + std::to_string(2 * h) +
                             " bases");
    }
    PalindromeProfile profile;
    profile.h = h;
    // l is the last index of the left half; the center sits between
    // l and l+1. On random sequence each test chain stops quickly, so
    // the scan is effectively linear.
    for (std::size_t l = h - 1; l + h < bases.size(); ++l) {
        bool full = true;
        for (std::size_t i = 0; i < h; ++i) {
            if (bases[l - i] != complement(bases[l + 1 + i])) {
                full = false;
                break;
            }
        }
        if (full) ++profile.centers;
    }
    return profile;
}

AttritionTable attrition_table(const Genome& genome, const MutationConfig& config,
                               std::vector<std::size_t> iterations, StructureKind kind,
                               const std::vector<std::size_t>& lengths) {
    if (iterations.empty()) throw ConfigError("iteration grid must not be empty");
    if (lengths.empty()) throw ConfigError("length grid must not be empty");
    for (std::size_t i = 1; i < iterations.size(); ++i) {
        if (iterations[i] <= iterations[i - 1]) {
            throw ConfigError("iteration grid must be strictly increasing");
        }
    }

    if (iterations.front() != 0) {
        iterations.insert(iterations.begin(), 0);
    }

    AttritionTable table;
    table.kind = kind;
    table.iterations = iterations;
    table.lengths = lengths;

    degrade_visit(genome.bases, config, iterations.back(), iterations,
                  [&](std::size_t, std::string_view bases) {
                      std::vector<std::uint64_t> row, row_distinct;
                      row.reserve(lengths.size());
                      for (const std::size_t len : lengths) {
                          if (kind == StructureKind::Repeats) {
                              const RepeatProfile p = count_repeats(bases, len);
                              row.push_back(p.windows);
                              row_distinct.push_back(p.distinct);
                          } else {
                              row.push_back(count_palindromes(bases, len).centers);
                          }
                      }
                      table.counts.push_back(std::move(row));
                      if (kind == StructureKind::Repeats) {
                          table.distinct.push_back(std::move(row_distinct));
                      }
                  });
    return table;
}

}  // namespace degradex
