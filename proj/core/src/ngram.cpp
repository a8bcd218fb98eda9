#include "degradex/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "degradex/errors.hpp"
#include "degradex/genome.hpp"
#include "degradex/rng.hpp"

namespace degradex {

namespace {

void check_order(int n) {
    if (n < 1 || n > kMaxNGramOrder) {
        throw ConfigError("n-gram order must be in [1, " +
                          std::to_string(kMaxNGramOrder) + "], got " + std::to_string(n));
    }
}

}  // namespace

NGramDistribution NGramDistribution::from_counts(int n,
                                                 std::vector<std::uint64_t> counts) {
    check_order(n);
    const std::size_t cells = std::size_t{1} << (2 * n);
    if (counts.size() != cells) {
        throw ConfigError("count vector must have 4^n entries");
    }
    NGramDistribution d;
    d.n = n;
    d.counts = std::move(counts);
    d.total = std::accumulate(d.counts.begin(), d.counts.end(), std::uint64_t{0});
    if (d.total == 0) {
        throw ConfigError("n-gram distribution needs a positive total count");
    }
    return d;
}

std::string word_string(int n, std::size_t index) {
    std::string w(static_cast<std::size_t>(n), 'A');
    for (int i = n - 1; i >= 0; --i) {
        w[static_cast<std::size_t>(i)] = kAlphabet[index & 3];
        index >>= 2;
    }
    return w;
}

NGramDistribution ngram_distribution(std::string_view bases, int n) {
    check_order(n);
    if (bases.size() < static_cast<std::size_t>(n)) {
        throw GenomeTooShort("sequence of length " + std::to_string(bases.size()) +
                             " is shorter than n = " + std::to_string(n));
    }
    NGramDistribution d;
    d.n = n;
    d.counts.assign(std::size_t{1} << (2 * n), 0);
    d.total = bases.size() - static_cast<std::size_t>(n) + 1;

    const std::size_t mask = (std::size_t{1} << (2 * n)) - 1;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        idx = ((idx << 2) | static_cast<std::size_t>(base_index(bases[i]))) & mask;
        if (i + 1 >= static_cast<std::size_t>(n)) {
            ++d.counts[idx];
        }
    }
    return d;
}

TransitionMatrix transition_matrix(std::string_view bases, int n) {
    check_order(n);
    if (bases.size() < static_cast<std::size_t>(n)) {
        throw GenomeTooShort("sequence of length " + std::to_string(bases.size()) +
                             " is shorter than n = " + std::to_string(n));
    }
    const std::size_t contexts = std::size_t{1} << (2 * (n - 1));

    // Count length-n windows keyed by (context, successor).
    std::vector<std::uint64_t> joint(contexts * 4, 0);
    const std::size_t mask = (std::size_t{1} << (2 * n)) - 1;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        idx = ((idx << 2) | static_cast<std::size_t>(base_index(bases[i]))) & mask;
        if (i + 1 >= static_cast<std::size_t>(n)) {
            ++joint[idx];
        }
    }

    TransitionMatrix t;
    t.n = n;
    t.probs.assign(contexts * 4, 0.0);
    t.row_support.assign(contexts, 0);
    t.total = bases.size() - static_cast<std::size_t>(n) + 1;
    for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
        std::uint64_t support = 0;
        for (int b = 0; b < 4; ++b) {
            support += joint[ctx * 4 + static_cast<std::size_t>(b)];
        }
        t.row_support[ctx] = support;
        if (support == 0) continue;
        for (int b = 0; b < 4; ++b) {
            t.probs[ctx * 4 + static_cast<std::size_t>(b)] =
                static_cast<double>(joint[ctx * 4 + static_cast<std::size_t>(b)]) /
                static_cast<double>(support);
        }
    }
    return t;
}

double hellinger(const NGramDistribution& p, const NGramDistribution& q) {
    if (p.n != q.n) {
        throw OrderMismatch("hellinger needs equal orders, got " + std::to_string(p.n) +
                            " and " + std::to_string(q.n));
    }
    const double pt = static_cast<double>(p.total);
    const double qt = static_cast<double>(q.total);
    double sum = 0.0;
    for (std::size_t w = 0; w < p.counts.size(); ++w) {
        const double d = std::sqrt(static_cast<double>(p.counts[w]) / pt) -
                         std::sqrt(static_cast<double>(q.counts[w]) / qt);
        sum += d * d;
    }
    return std::min(1.0, std::sqrt(0.5 * sum));
}

double entropy(const NGramDistribution& p) {
    const double total = static_cast<double>(p.total);
    double h = 0.0;
    for (const std::uint64_t c : p.counts) {
        if (c == 0) continue;
        const double prob = static_cast<double>(c) / total;
        h -= prob * std::log(prob);
    }
    return std::max(0.0, h);
}

double max_entropy(int n) {
    check_order(n);
    return n * std::log(4.0);
}

double null_threshold(std::string_view bases, int n, double alpha,
                      std::size_t samples, std::uint64_t seed) {
    check_order(n);
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ConfigError("alpha must lie in (0, 1)");
    }
    if (samples < 100) {
        throw ConfigError("need at least 100 null samples");
    }

    const NGramDistribution observed = ngram_distribution(bases, n);
    const TransitionMatrix model = transition_matrix(bases, n);
    const NGramDistribution base_dist = ngram_distribution(bases, 1);

    // Cumulative thresholds for the initial context draw. For n >= 2 the
    // context is a length-(n-1) word sampled from its empirical
    // distribution; for n = 1 sampling is i.i.d. from the base marginal.
    std::vector<std::uint64_t> context_cum;
    NGramDistribution context_dist;
    if (n >= 2) {
        context_dist = ngram_distribution(bases, n - 1);
        context_cum.resize(context_dist.counts.size());
        std::uint64_t run = 0;
        for (std::size_t w = 0; w < context_dist.counts.size(); ++w) {
            run += context_dist.counts[w];
            context_cum[w] = run;
        }
    }

    const std::size_t ctx_mask = (std::size_t{1} << (2 * (n - 1))) - 1;
    const std::size_t length = bases.size();
    Rng rng(seed);

    auto draw_base = [&](std::size_t ctx) -> int {
        const double u = rng.uniform();
        const double* row = nullptr;
        double fallback[4];
        if (model.row_support[ctx] > 0) {
            row = model.probs.data() + ctx * 4;
        } else {
            for (int b = 0; b < 4; ++b) {
                fallback[b] = base_dist.probability(static_cast<std::size_t>(b));
            }
            row = fallback;
        }
        double cum = 0.0;
        for (int b = 0; b < 3; ++b) {
            cum += row[b];
            if (u < cum) return b;
        }
        return 3;
    };

    std::string sample(length, 'A');
    std::vector<double> distances;
    distances.reserve(samples);
    for (std::size_t s = 0; s < samples; ++s) {
        std::size_t ctx = 0;
        std::size_t pos = 0;
        if (n >= 2) {
            const std::uint64_t pick = rng.uniform_below(context_dist.total);
            const std::size_t word = static_cast<std::size_t>(
                std::upper_bound(context_cum.begin(), context_cum.end(), pick) -
                context_cum.begin());
            for (int i = n - 2; i >= 0; --i) {
                sample[pos++] = kAlphabet[(word >> (2 * i)) & 3];
            }
            ctx = word;
        }
        for (; pos < length; ++pos) {
            const int b = draw_base(ctx);
            sample[pos] = kAlphabet[b];
            ctx = ((ctx << 2) | static_cast<std::size_t>(b)) & ctx_mask;
        }
        distances.push_back(hellinger(ngram_distribution(sample, n), observed));
    }

    std::sort(distances.begin(), distances.end());
    const double rank = (1.0 - alpha) * static_cast<double>(samples);
    std::size_t idx = static_cast<std::size_t>(std::ceil(rank));
    if (idx > 0) --idx;
    if (idx >= samples) idx = samples - 1;
    return distances[idx];
}

}  // namespace degradex
