#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "degradex/genome.hpp"

namespace degradex {

/** What to do with symbols outside {A,C,G,T} (N, R, Y, ...). */
enum class SanitizePolicy {
    Reject,        // raise AmbiguousBase with the offending position
    Drop,          // remove the symbol
    RandomReplace  // substitute uniformly from {A,C,G,T}, seeded
};

SanitizePolicy sanitize_policy_from_string(std::string_view name);
std::string_view to_string(SanitizePolicy policy);

/**
 * Uppercase a raw sequence and resolve non-ACGT symbols per policy.
 * RandomReplace draws one uniform base per offending symbol from an Rng
 * seeded with `seed`.
 */
std::string sanitize(std::string_view raw, SanitizePolicy policy,
                     std::uint64_t seed = 0);

/**
 * Parse FASTA text. Sequence lines are concatenated and uppercased, CRLF and
 * trailing whitespace are tolerated, and each record's sequence is passed
 * through sanitize(). The record id is the first whitespace-delimited token
 * after '>'; the rest of the header line is the description.
 *
 * Errors (ParseError / AmbiguousBase): empty input, sequence data before any
 * header, a record with an empty sequence.
 */
std::vector<Genome> parse_fasta(std::istream& in,
                                SanitizePolicy policy = SanitizePolicy::RandomReplace,
                                std::uint64_t seed = 0);

std::vector<Genome> parse_fasta_file(const std::string& path,
                                     SanitizePolicy policy = SanitizePolicy::RandomReplace,
                                     std::uint64_t seed = 0);

/** Write records as FASTA, wrapping sequence lines at `line_width` bases. */
void write_fasta(const std::vector<Genome>& genomes, std::ostream& out,
                 std::size_t line_width = 70);

void write_fasta_file(const std::vector<Genome>& genomes, const std::string& path,
                      std::size_t line_width = 70);

}  // namespace degradex
