#include "degradex/mutation.hpp"

#include <algorithm>
#include <cmath>

#include "degradex/errors.hpp"
#include "degradex/fasta.hpp"

namespace degradex {

std::string_view to_string(MutationKind kind) {
    switch (kind) {
        case MutationKind::SNP: return "SNP";
        case MutationKind::INS: return "INS";
        case MutationKind::DEL: return "DEL";
        case MutationKind::INV: return "INV";
        case MutationKind::DUP: return "DUP";
        case MutationKind::TRANS: return "TRANS";
    }
    return "?";
}

void MutationConfig::validate() const {
    auto probability = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ConfigError(std::string(name) + " must lie in [0, 1]");
        }
    };
    probability(p_snp, "p_snp");
    probability(p_ins, "p_ins");
    probability(p_del, "p_del");
    if (!(p_snp + p_ins + p_del <= 1.0)) {
        throw ConfigError("p_snp + p_ins + p_del must not exceed 1");
    }
    auto rate = [](double v, const char* name) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ConfigError(std::string(name) + " must be a finite rate >= 0");
        }
    };
    rate(p_inv, "p_inv");
    rate(p_dup, "p_dup");
    rate(p_trans, "p_trans");
    if (!(indel_len_geom_p > 0.0 && indel_len_geom_p <= 1.0)) {
        throw ConfigError("indel_len_geom_p must lie in (0, 1]");
    }
    if (sv_len_min < 2) {
        throw ConfigError("sv_len_min must be at least 2");
    }
    if (sv_len_max < sv_len_min) {
        throw ConfigError("sv_len_max must be >= sv_len_min");
    }
}

namespace {

char substituted_base(char original, Rng& rng) {
    const int b = base_index(original);
    return kAlphabet[(static_cast<std::size_t>(b) + 1 + rng.uniform_below(3)) & 3];
}

// Structural events in one fixed draw order so a seed fully determines
// the iteration. Counts scale with the iteration's input length.
void apply_structural(std::string& out, std::size_t input_length,
                      const MutationConfig& cfg, Rng& rng,
                      std::vector<MutationEvent>* events, MutateStats* stats) {
    const double scale = static_cast<double>(input_length) / 1e6;
    const std::uint64_t counts[3] = {
        rng.poisson(cfg.p_inv * scale),
        rng.poisson(cfg.p_dup * scale),
        rng.poisson(cfg.p_trans * scale),
    };
    static constexpr MutationKind kinds[3] = {MutationKind::INV, MutationKind::DUP,
                                              MutationKind::TRANS};
    const std::uint64_t span =
        static_cast<std::uint64_t>(cfg.sv_len_max - cfg.sv_len_min) + 1;

    for (int k = 0; k < 3; ++k) {
        for (std::uint64_t e = 0; e < counts[k]; ++e) {
            const std::size_t len =
                cfg.sv_len_min + static_cast<std::size_t>(rng.uniform_below(span));
            if (len > out.size()) {
                if (stats) ++stats->skipped_sv;
                continue;
            }
            const std::size_t pos = static_cast<std::size_t>(
                rng.uniform_below(static_cast<std::uint64_t>(out.size() - len) + 1));
            switch (kinds[k]) {
                case MutationKind::INV: {
                    const std::string rc = reverse_complement(
                        std::string_view(out).substr(pos, len));
                    out.replace(pos, len, rc);
                    break;
                }
                case MutationKind::DUP: {
                    const std::string copy = out.substr(pos, len);
                    out.insert(pos + len, copy);
                    break;
                }
                case MutationKind::TRANS: {
                    std::string segment = out.substr(pos, len);
                    out.erase(pos, len);
                    const std::size_t dest = static_cast<std::size_t>(
                        rng.uniform_below(static_cast<std::uint64_t>(out.size()) + 1));
                    out.insert(dest, segment);
                    break;
                }
                default:
                    break;
            }
            if (events) {
                events->push_back({kinds[k], pos, len, {}});
            }
        }
    }
}

}  // namespace

std::string mutate_once(std::string_view bases, const MutationConfig& cfg, Rng& rng,
                        std::vector<MutationEvent>* events, MutateStats* stats) {
    const double t1 = cfg.p_snp;
    const double t2 = t1 + cfg.p_ins;
    const double t3 = t2 + cfg.p_del;
    std::string out(bases);

    if (cfg.p_ins == 0.0 && cfg.p_del == 0.0) {
        if (t1 > 0.0) {
            for (std::size_t i = 0; i < out.size(); ++i) {
                if (rng.uniform() < t1) {
                    out[i] = substituted_base(out[i], rng);
                    if (events) {
                        events->push_back(
                            {MutationKind::SNP, i, 1, std::string(1, out[i])});
                    }
                }
            }
        }
    } else if (t3 > 0.0) {
        // Draws run left to right over the pre-iteration sequence; the
        // collected point events are then applied right to left, so each
        // event's position stays valid in pre-iteration coordinates.
        std::vector<MutationEvent> point;
        for (std::size_t i = 0; i < bases.size(); ++i) {
            const double u = rng.uniform();
            if (u >= t3) continue;
            if (u < t1) {
                point.push_back(
                    {MutationKind::SNP, i, 1, std::string(1, substituted_base(bases[i], rng))});
            } else if (u < t2) {
                const std::uint64_t len = rng.geometric(cfg.indel_len_geom_p);
                std::string payload;
                payload.reserve(len);
                for (std::uint64_t j = 0; j < len; ++j) {
                    payload.push_back(kAlphabet[rng.uniform_below(4)]);
                }
                point.push_back({MutationKind::INS, i, payload.size(), std::move(payload)});
            } else {
                const std::uint64_t len = rng.geometric(cfg.indel_len_geom_p);
                point.push_back({MutationKind::DEL, i, static_cast<std::size_t>(len), {}});
            }
        }
        for (std::size_t r = point.size(); r-- > 0;) {
            MutationEvent& ev = point[r];
            switch (ev.kind) {
                case MutationKind::SNP:
                    out[ev.position] = ev.payload[0];
                    break;
                case MutationKind::INS:
                    out.insert(ev.position + 1, ev.payload);
                    break;
                case MutationKind::DEL:
                    ev.length = std::min(ev.length, out.size() - ev.position);
                    out.erase(ev.position, ev.length);
                    break;
                default:
                    break;
            }
        }
        if (events) {
            events->insert(events->end(), std::make_move_iterator(point.begin()),
                           std::make_move_iterator(point.end()));
        }
    }

    if (cfg.has_structural()) {
        apply_structural(out, bases.size(), cfg, rng, events, stats);
    }
    return out;
}

Genome mutate_once(const Genome& genome, const MutationConfig& cfg, Rng& rng,
                   std::vector<MutationEvent>* events, MutateStats* stats) {
    Genome g;
    g.id = genome.id;
    g.description = genome.description;
    g.bases = mutate_once(std::string_view(genome.bases), cfg, rng, events, stats);
    return g;
}

void validate_checkpoints(const std::vector<std::size_t>& checkpoints,
                          std::size_t iterations) {
    if (checkpoints.empty()) {
        throw ConfigError("checkpoint list must not be empty");
    }
    if (checkpoints.front() != 0) {
        throw ConfigError("checkpoint list must start at 0");
    }
    for (std::size_t i = 1; i < checkpoints.size(); ++i) {
        if (checkpoints[i] <= checkpoints[i - 1]) {
            throw ConfigError("checkpoints must be strictly increasing");
        }
    }
    if (checkpoints.back() > iterations) {
        throw ConfigError("checkpoints may not exceed the iteration count");
    }
}

void degrade_visit(
    std::string_view bases, const MutationConfig& cfg, std::size_t iterations,
    const std::vector<std::size_t>& checkpoints,
    const std::function<void(std::size_t, std::string_view)>& visit,
    const std::function<void(std::size_t, const std::vector<MutationEvent>&)>& on_events,
    MutateStats* stats) {
    cfg.validate();
    validate_checkpoints(checkpoints, iterations);

    Rng rng(cfg.seed);
    std::string current(bases);
    std::size_t next = 0;
    if (checkpoints[next] == 0) {
        visit(0, current);
        ++next;
    }
    std::vector<MutationEvent> events;
    for (std::size_t t = 1; t <= iterations; ++t) {
        if (next >= checkpoints.size() && !on_events) break;
        events.clear();
        current = mutate_once(current, cfg, rng, on_events ? &events : nullptr, stats);
        if (on_events) on_events(t, events);
        if (next < checkpoints.size() && checkpoints[next] == t) {
            visit(t, current);
            ++next;
        }
    }
}

DegradedSeries degrade(const Genome& genome, const MutationConfig& cfg,
                       std::size_t iterations,
                       const std::vector<std::size_t>& checkpoints) {
    DegradedSeries series;
    degrade_visit(genome.bases, cfg, iterations, checkpoints,
                  [&](std::size_t t, std::string_view bases) {
                      series.checkpoints.push_back(t);
                      Genome g;
                      g.id = genome.id;
                      g.description = genome.description;
                      g.bases.assign(bases.begin(), bases.end());
                      series.snapshots.push_back(std::move(g));
                  });
    return series;
}

}  // namespace degradex
