#include "degradex/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "degradex/edit_distance.hpp"
#include "degradex/errors.hpp"
#include "degradex/ngram.hpp"

namespace degradex {

std::string measure_label(const Measure& m) {
    switch (m.kind) {
        case MeasureKind::TripletEntropy:
            return m.n == 3 ? "triplet_entropy" : "entropy_" + std::to_string(m.n);
        case MeasureKind::EntropyDelta:
            return m.n == 3 ? "entropy_delta" : "entropy_delta_" + std::to_string(m.n);
        case MeasureKind::HellingerToParent:
            return "hellinger_to_parent_" + std::to_string(m.n);
        case MeasureKind::HammingOrigin:
            return "hamming_origin";
        case MeasureKind::LevenshteinOrigin:
            return "levenshtein_origin";
    }
    return "?";
}

Measure measure_from_string(const std::string& name) {
    auto parse_order = [&](const std::string& stem) -> int {
        if (name == stem) return 3;
        if (name.size() > stem.size() + 1 && name.compare(0, stem.size(), stem) == 0 &&
            name[stem.size()] == '_') {
            const std::string tail = name.substr(stem.size() + 1);
            if (!tail.empty() && tail.find_first_not_of("0123456789") == std::string::npos) {
                return std::stoi(tail);
            }
        }
        return -1;
    };
    if (name == "triplet_entropy") return {MeasureKind::TripletEntropy, 3};
    if (int n = parse_order("entropy"); n > 0) return {MeasureKind::TripletEntropy, n};
    if (int n = parse_order("entropy_delta"); n > 0) return {MeasureKind::EntropyDelta, n};
    if (int n = parse_order("hellinger_to_parent"); n > 0)
        return {MeasureKind::HellingerToParent, n};
    if (int n = parse_order("hellinger"); n > 0) return {MeasureKind::HellingerToParent, n};
    if (name == "hamming" || name == "hamming_origin") return {MeasureKind::HammingOrigin, 0};
    if (name == "levenshtein" || name == "levenshtein_origin")
        return {MeasureKind::LevenshteinOrigin, 0};
    throw ConfigError("unknown measure: " + name);
}

std::string_view to_string(OriginKind origin) {
    switch (origin) {
        case OriginKind::Parent: return "parent";
        case OriginKind::Start: return "start";
        case OriginKind::Reference: return "reference";
    }
    return "?";
}

OriginKind origin_from_string(const std::string& name) {
    if (name == "parent") return OriginKind::Parent;
    if (name == "start") return OriginKind::Start;
    if (name == "reference") return OriginKind::Reference;
    throw ConfigError("unknown origin: " + name);
}

namespace {

void validate_spec(const TrajectorySpec& spec, const MutationConfig& cfg,
                   const Genome* reference) {
    if (spec.measures.empty()) {
        throw ConfigError("trajectory needs at least one measure");
    }
    if (spec.checkpoints.empty()) {
        throw ConfigError("trajectory needs at least one checkpoint");
    }
    validate_checkpoints(spec.checkpoints, spec.checkpoints.back());
    for (const Measure& m : spec.measures) {
        if (m.kind == MeasureKind::HammingOrigin && !cfg.length_preserving()) {
            throw HammingWithIndels(
                "hamming requested with a length-changing mutation configuration");
        }
        if (m.kind == MeasureKind::TripletEntropy || m.kind == MeasureKind::EntropyDelta ||
            m.kind == MeasureKind::HellingerToParent) {
            if (m.n < 1 || m.n > kMaxNGramOrder) {
                throw ConfigError("measure order must lie in [1, 8]");
            }
        }
    }
    if (spec.origin == OriginKind::Reference && reference == nullptr) {
        throw ConfigError("reference origin requires a reference genome");
    }
}

}  // namespace

Trajectory run_trajectory(const Genome& genome, const MutationConfig& cfg,
                          const TrajectorySpec& spec, const Genome* reference) {
    cfg.validate();
    validate_spec(spec, cfg, reference);

    const std::string_view origin_bases =
        spec.origin == OriginKind::Reference ? std::string_view(reference->bases)
                                             : std::string_view(genome.bases);

    // Parent-distribution cache per distinct order in the measure list.
    std::vector<NGramDistribution> parent_dist(kMaxNGramOrder + 1);
    std::vector<double> parent_entropy(kMaxNGramOrder + 1, -1.0);
    for (const Measure& m : spec.measures) {
        if (m.kind == MeasureKind::HellingerToParent || m.kind == MeasureKind::TripletEntropy ||
            m.kind == MeasureKind::EntropyDelta) {
            if (parent_dist[static_cast<std::size_t>(m.n)].n == 0) {
                parent_dist[static_cast<std::size_t>(m.n)] =
                    ngram_distribution(genome.bases, m.n);
            }
        }
    }

    Trajectory out;
    out.genome_id = genome.id;
    out.seed = cfg.seed;
    out.checkpoints = spec.checkpoints;
    out.values.assign(spec.measures.size(),
                      std::vector<double>(spec.checkpoints.size(), 0.0));

    // The incremental convention for an external origin: report
    // d(snapshot, reference) - d(input, reference). Checkpoint 0 is
    // always present, so the offset is fixed on the first visit.
    double hamming_offset = 0.0;
    double levenshtein_offset = 0.0;
    std::size_t column = 0;

    degrade_visit(genome.bases, cfg, spec.checkpoints.back(), spec.checkpoints,
                  [&](std::size_t t, std::string_view bases) {
                      NGramDistribution snap_dist[kMaxNGramOrder + 1];
                      for (std::size_t mi = 0; mi < spec.measures.size(); ++mi) {
                          const Measure& m = spec.measures[mi];
                          double value = 0.0;
                          switch (m.kind) {
                              case MeasureKind::TripletEntropy:
                              case MeasureKind::EntropyDelta:
                              case MeasureKind::HellingerToParent: {
                                  NGramDistribution& d =
                                      snap_dist[static_cast<std::size_t>(m.n)];
                                  if (d.n == 0) d = ngram_distribution(bases, m.n);
                                  if (m.kind == MeasureKind::HellingerToParent) {
                                      value = hellinger(
                                          d, parent_dist[static_cast<std::size_t>(m.n)]);
                                  } else {
                                      value = entropy(d);
                                      if (m.kind == MeasureKind::EntropyDelta) {
                                          double& h0 =
                                              parent_entropy[static_cast<std::size_t>(m.n)];
                                          if (h0 < 0.0) {
                                              h0 = entropy(parent_dist[
                                                  static_cast<std::size_t>(m.n)]);
                                          }
                                          value -= h0;
                                      }
                                  }
                                  break;
                              }
                              case MeasureKind::HammingOrigin: {
                                  value = static_cast<double>(hamming(bases, origin_bases));
                                  if (spec.origin == OriginKind::Reference) {
                                      if (t == 0) hamming_offset = value;
                                      value -= hamming_offset;
                                  }
                                  break;
                              }
                              case MeasureKind::LevenshteinOrigin: {
                                  value =
                                      static_cast<double>(levenshtein(bases, origin_bases));
                                  if (spec.origin == OriginKind::Reference) {
                                      if (t == 0) levenshtein_offset = value;
                                      value -= levenshtein_offset;
                                  }
                                  break;
                              }
                          }
                          out.values[mi][column] = value;
                      }
                      ++column;
                  });
    return out;
}

QuadraticFit quadratic_fit(const std::vector<double>& ts, const std::vector<double>& ys) {
    if (ts.size() != ys.size()) {
        throw DegenerateDesign("abscissa and ordinate lengths differ");
    }
    std::vector<double> distinct(ts);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3) {
        throw DegenerateDesign("quadratic fit needs at least 3 distinct abscissa values");
    }

    const long double t0 = distinct.front();
    const long double span = distinct.back() - distinct.front();

    // Normal equations on u = (t - t0)/span in [0, 1]; extended
    // precision keeps the 3x3 solve well conditioned.
    long double m[3][3] = {};
    long double b[3] = {};
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const long double u = (static_cast<long double>(ts[i]) - t0) / span;
        const long double row[3] = {1.0L, u, u * u};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += row[r] * row[c];
            b[r] += row[r] * static_cast<long double>(ys[i]);
        }
    }

    // Gaussian elimination with partial pivoting.
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::fabs(static_cast<double>(m[perm[r]][col])) >
                std::fabs(static_cast<double>(m[perm[pivot]][col]))) {
                pivot = r;
            }
        }
        std::swap(perm[col], perm[pivot]);
        const long double diag = m[perm[col]][col];
        if (diag == 0.0L) {
            throw DegenerateDesign("singular design matrix in quadratic fit");
        }
        for (int r = col + 1; r < 3; ++r) {
            const long double f = m[perm[r]][col] / diag;
            for (int c = col; c < 3; ++c) m[perm[r]][c] -= f * m[perm[col]][c];
            b[perm[r]] -= f * b[perm[col]];
        }
    }
    long double a[3];
    for (int r = 2; r >= 0; --r) {
        long double acc = b[perm[r]];
        for (int c = r + 1; c < 3; ++c) acc -= m[perm[r]][c] * a[c];
        a[r] = acc / m[perm[r]][r];
    }

    QuadraticFit fit;
    fit.c2 = static_cast<double>(a[2] / (span * span));
    fit.c1 = static_cast<double>(a[1] / span - 2.0L * a[2] * t0 / (span * span));
    fit.c0 = static_cast<double>(a[0] - a[1] * t0 / span + a[2] * t0 * t0 / (span * span));

    long double ss_res = 0.0L, ss_tot = 0.0L, mean = 0.0L;
    for (const double y : ys) mean += y;
    mean /= static_cast<long double>(ys.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const long double u = (static_cast<long double>(ts[i]) - t0) / span;
        const long double predicted = a[0] + a[1] * u + a[2] * u * u;
        const long double r = static_cast<long double>(ys[i]) - predicted;
        ss_res += r * r;
        const long double d = static_cast<long double>(ys[i]) - mean;
        ss_tot += d * d;
    }
    if (ss_tot == 0.0L) {
        fit.r2 = 1.0;  // flat data: the fit reproduces it exactly
    } else {
        fit.r2 = std::clamp(static_cast<double>(1.0L - ss_res / ss_tot), 0.0, 1.0);
    }
    return fit;
}

double evaluate_fit(const QuadraticFit& fit, double t) {
    return fit.c0 + fit.c1 * t + fit.c2 * t * t;
}

BatchResult batch_run(const std::vector<Genome>& corpus, const MutationConfig& config,
                      const TrajectorySpec& spec, FitTarget target, std::size_t threads,
                      const Genome* reference) {
    if (corpus.empty()) {
        throw CorpusEmpty("batch run needs a non-empty corpus");
    }
    config.validate();

    // The fit target measure is appended when the caller did not ask
    // for it, so every genome always gets a fit.
    TrajectorySpec effective = spec;
    const MeasureKind fit_kind = target == FitTarget::Entropy ? MeasureKind::TripletEntropy
                                                              : MeasureKind::EntropyDelta;
    std::size_t fit_measure = effective.measures.size();
    for (std::size_t i = 0; i < effective.measures.size(); ++i) {
        if (effective.measures[i].kind == fit_kind && effective.measures[i].n == 3) {
            fit_measure = i;
            break;
        }
    }
    if (fit_measure == effective.measures.size()) {
        effective.measures.push_back({fit_kind, 3});
    }

    BatchResult result;
    result.measures = effective.measures;
    result.fit_measure = fit_measure;
    const std::size_t n = corpus.size();
    result.trajectories.assign(n, {});
    result.fits.assign(n, {});
    result.ok.assign(n, false);
    std::vector<std::string> failures(n);

    std::vector<double> ts(effective.checkpoints.size());
    for (std::size_t c = 0; c < effective.checkpoints.size(); ++c) {
        ts[c] = static_cast<double>(effective.checkpoints[c]);
    }

    auto run_one = [&](std::size_t i) {
        try {
            MutationConfig cfg = config;
            cfg.seed = derive_seed(config.seed, corpus[i].id);
            result.trajectories[i] = run_trajectory(corpus[i], cfg, effective, reference);
            result.fits[i] = quadratic_fit(ts, result.trajectories[i].values[fit_measure]);
            result.ok[i] = true;
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    };

    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) run_one(i);
    } else {
        const std::size_t workers = std::min(threads, n);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += workers) run_one(i);
            });
        }
        for (std::thread& th : pool) th.join();
    }

    std::vector<double> r2s;
    r2s.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (result.ok[i]) {
            r2s.push_back(result.fits[i].r2);
        } else {
            result.errors.push_back({corpus[i].id, failures[i]});
        }
    }
    if (!r2s.empty()) {
        std::sort(r2s.begin(), r2s.end());
        result.min_r2 = r2s.front();
        const double rank = 0.01 * static_cast<double>(r2s.size());
        std::size_t idx = static_cast<std::size_t>(std::ceil(rank));
        if (idx > 0) --idx;
        result.pct1_r2 = r2s[std::min(idx, r2s.size() - 1)];
    }
    return result;
}

}  // namespace degradex
