#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "degradex/genome.hpp"
#include "degradex/rng.hpp"

namespace degradex {

enum class MutationKind { SNP, INS, DEL, INV, DUP, TRANS };

std::string_view to_string(MutationKind kind);

// Per-iteration mutation rates. SNP/INS/DEL are per-base probabilities
// combined into one exclusive categorical draw per base, so their sum
// may not exceed 1. INV/DUP/TRANS are expected event counts per
// megabase per iteration.
struct MutationConfig {
    double p_snp = 1e-3;
    double p_ins = 0.0;
    double p_del = 0.0;
    double p_inv = 0.0;
    double p_dup = 0.0;
    double p_trans = 0.0;
    double indel_len_geom_p = 0.5;  // geometric length parameter in (0, 1]
    std::size_t sv_len_min = 2;
    std::size_t sv_len_max = 1000;
    std::uint64_t seed = 0;

    // Throws ConfigError when any invariant fails.
    void validate() const;

    bool length_preserving() const {
        return p_ins == 0.0 && p_del == 0.0 && p_dup == 0.0 && p_trans == 0.0;
    }
    bool has_structural() const { return p_inv > 0.0 || p_dup > 0.0 || p_trans > 0.0; }
};

// One applied edit. `position` is a 0-based offset into the sequence
// the event was applied to: for point events that is the pre-iteration
// sequence (they are applied right to left, so positions to the left of
// an event are never shifted by it); for structural events it is the
// sequence as of that event's application.
struct MutationEvent {
    MutationKind kind;
    std::size_t position = 0;
    std::size_t length = 1;
    std::string payload;  // inserted or substituted bases, when applicable
};

struct MutateStats {
    std::size_t skipped_sv = 0;  // structural events dropped on a too-short genome
};

// One degradation iteration. Draws one categorical outcome per base
// (SNP / insertion start / deletion start / none), applies the point
// events right to left, then applies Poisson-count structural events.
// `events` and `stats` may be null when the caller only needs the result.
std::string mutate_once(std::string_view bases, const MutationConfig& config, Rng& rng,
                        std::vector<MutationEvent>* events = nullptr,
                        MutateStats* stats = nullptr);

Genome mutate_once(const Genome& genome, const MutationConfig& config, Rng& rng,
                   std::vector<MutationEvent>* events = nullptr,
                   MutateStats* stats = nullptr);

struct DegradedSeries {
    std::vector<std::size_t> checkpoints;
    std::vector<Genome> snapshots;  // one per checkpoint, same order
};

// Validates a checkpoint list for a run of `iterations` iterations:
// non-empty, strictly increasing, starting at 0, ending <= iterations.
// Throws ConfigError otherwise.
void validate_checkpoints(const std::vector<std::size_t>& checkpoints,
                          std::size_t iterations);

// Applies mutate_once sequentially, seeding a fresh generator from
// config.seed; iteration t's output is the sole input to iteration t+1.
// Retains only the requested snapshots.
DegradedSeries degrade(const Genome& genome, const MutationConfig& config,
                       std::size_t iterations,
                       const std::vector<std::size_t>& checkpoints);

// Streaming variant: visit(iteration, bases) is called once per
// checkpoint in order, without retaining snapshots. `on_events`, when
// set, receives every iteration's event list (iteration numbers are
// 1-based; iteration 0 is the unmodified input).
void degrade_visit(
    std::string_view bases, const MutationConfig& config, std::size_t iterations,
    const std::vector<std::size_t>& checkpoints,
    const std::function<void(std::size_t, std::string_view)>& visit,
    const std::function<void(std::size_t, const std::vector<MutationEvent>&)>& on_events =
        nullptr,
    MutateStats* stats = nullptr);

}  // namespace degradex
