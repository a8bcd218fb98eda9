#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "degradex/genome.hpp"
#include "degradex/mutation.hpp"

namespace degradex {

// Repeated-window census at one word length. `windows` counts the
// positions whose k-mer occurs at two or more positions; `distinct`
// counts how many different words are repeated.
struct RepeatProfile {
    std::size_t k = 0;
    std::uint64_t windows = 0;
    std::uint64_t distinct = 0;
};

// Expected O(|G|) over hashed word keys. Throws GenomeTooShort when
// k > |G|, ConfigError when k < 1.
RepeatProfile count_repeats(std::string_view bases, std::size_t k);

// Reverse-complement palindrome census at one half-length. A center is
// the gap between two adjacent positions; it counts when the h bases on
// the left are the reverse complement of the h bases on the right,
// i.e. the maximal half-length at that center is >= h. Only such
// even-total-length palindromes exist: no base complements itself.
struct PalindromeProfile {
    std::size_t h = 0;
    std::uint64_t centers = 0;
};

// Throws GenomeTooShort when 2h > |G|, ConfigError when h < 1.
PalindromeProfile count_palindromes(std::string_view bases, std::size_t h);

enum class StructureKind { Repeats, Palindromes };

// Degradation attrition of repeats or palindromes: rows are the
// requested iterations, columns the requested lengths (k for repeats,
// h for palindromes). counts[row][col]; for repeats a parallel
// distinct[row][col] is filled as the secondary census.
struct AttritionTable {
    StructureKind kind = StructureKind::Repeats;
    std::vector<std::size_t> iterations;
    std::vector<std::size_t> lengths;
    std::vector<std::vector<std::uint64_t>> counts;
    std::vector<std::vector<std::uint64_t>> distinct;  // repeats only
};

// Degrades the genome once with checkpoints at the iteration grid and
// tabulates the census at every checkpoint. The grid must be strictly
// increasing; iteration 0 is added internally when absent (and then
// still reported).
AttritionTable attrition_table(const Genome& genome, const MutationConfig& config,
                               std::vector<std::size_t> iterations, StructureKind kind,
                               const std::vector<std::size_t>& lengths);

}  // namespace degradex
