#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace degradex {

// Empirical distribution of the 4^n contiguous length-n words of a
// genome. Stored as dense counts so entropy and Hellinger loops touch
// a flat array; n is capped at 8 (4^8 = 65536 cells).
struct NGramDistribution {
    int n = 0;
    std::vector<std::uint64_t> counts;  // size 4^n, indexed by 2-bit packed word
    std::uint64_t total = 0;            // sum of counts

    double probability(std::size_t word) const {
        return static_cast<double>(counts[word]) / static_cast<double>(total);
    }

    // Assembles a distribution from explicit counts; total must end up > 0.
    static NGramDistribution from_counts(int n, std::vector<std::uint64_t> counts);
};

// Maximum supported word length for dense storage.
inline constexpr int kMaxNGramOrder = 8;

// 2-bit packed word index -> literal word text, e.g. (3, 0) -> "AAA".
std::string word_string(int n, std::size_t index);

// Counts all |G|-n+1 windows. Throws GenomeTooShort when |G| < n,
// ConfigError when n is outside [1, 8].
NGramDistribution ngram_distribution(std::string_view bases, int n);

// Conditional distribution of a base given the preceding n-1 bases.
// Rows with no support are all-zero and reported empty rather than NaN.
// row_support stores the number of length-n windows beginning with each
// context, so the order-n word distribution factors exactly as
// P_n(ctx . b) = row_support(ctx)/total * prob(ctx, b).
struct TransitionMatrix {
    int n = 0;
    std::vector<double> probs;              // 4^(n-1) rows of 4, row-major
    std::vector<std::uint64_t> row_support;  // per-context window count
    std::uint64_t total = 0;                 // sum of row_support = |G|-n+1

    std::size_t rows() const { return row_support.size(); }
    bool row_empty(std::size_t context) const { return row_support[context] == 0; }
    double prob(std::size_t context, int base) const {
        return probs[context * 4 + static_cast<std::size_t>(base)];
    }
};

TransitionMatrix transition_matrix(std::string_view bases, int n);

// Hellinger distance in [0, 1]: sqrt(0.5 * sum (sqrt p - sqrt q)^2).
// Throws OrderMismatch when the orders differ.
double hellinger(const NGramDistribution& p, const NGramDistribution& q);

// Shannon entropy -sum p ln p in nats; zero-probability words contribute 0.
double entropy(const NGramDistribution& p);

// Entropy of the uniform distribution over 4^n words: n * ln 4.
double max_entropy(int n);

// Monte-Carlo null threshold: resample `samples` sequences of length
// |bases| from the genome's own order-n Markov model, measure each
// sample's Hellinger distance to the genome's n-gram distribution, and
// return the (1-alpha) empirical quantile. A context never seen in the
// genome falls back to the base distribution during sampling.
double null_threshold(std::string_view bases, int n, double alpha,
                      std::size_t samples, std::uint64_t seed);

}  // namespace degradex
