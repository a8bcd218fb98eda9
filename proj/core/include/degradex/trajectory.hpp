#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "degradex/genome.hpp"
#include "degradex/mutation.hpp"

namespace degradex {

enum class MeasureKind {
    TripletEntropy,     // raw n-gram entropy of the snapshot (n defaults to 3)
    EntropyDelta,       // entropy(t) - entropy(0)
    HellingerToParent,  // Hellinger between snapshot and input n-gram distributions
    HammingOrigin,      // Hamming distance to the origin sequence
    LevenshteinOrigin,  // Levenshtein distance to the origin sequence
};

struct Measure {
    MeasureKind kind = MeasureKind::TripletEntropy;
    int n = 3;  // word length for the distribution-based measures
};

// Canonical measure label used in CSV output, e.g. "triplet_entropy",
// "hellinger_to_parent_2", "levenshtein_origin".
std::string measure_label(const Measure& measure);

// Parses a label or CLI alias ("levenshtein", "hamming", "hellinger_4").
Measure measure_from_string(const std::string& name);

enum class OriginKind {
    Parent,     // this trajectory's own 0-iteration genome
    Start,      // the (possibly pre-degraded) input; same sequence as Parent
    Reference,  // an external genome; checkpoint-0 distance subtracted
};

std::string_view to_string(OriginKind origin);
OriginKind origin_from_string(const std::string& name);

struct TrajectorySpec {
    std::vector<std::size_t> checkpoints{0, 250, 500, 1000, 2000};
    std::vector<Measure> measures{{MeasureKind::TripletEntropy, 3}};
    OriginKind origin = OriginKind::Parent;
    std::string reference_id;  // resolved by the caller for Reference origin
};

struct Trajectory {
    std::string genome_id;
    std::uint64_t seed = 0;
    std::vector<std::size_t> checkpoints;
    std::vector<std::vector<double>> values;  // values[measure][checkpoint]
};

// Quadratic least-squares summary value ~ c0 + c1 t + c2 t^2 with the
// coefficient of determination; flat data defines r2 = 1.
struct QuadraticFit {
    double c0 = 0, c1 = 0, c2 = 0;
    double r2 = 1.0;
};

// Runs the degradation and evaluates every measure at every checkpoint,
// streaming snapshots (only the input and the current snapshot are held).
// `reference` must be non-null for Reference origin. Throws
// HammingWithIndels when Hamming is requested under a length-changing
// configuration (insertions, deletions, duplications or translocations).
Trajectory run_trajectory(const Genome& genome, const MutationConfig& config,
                          const TrajectorySpec& spec, const Genome* reference = nullptr);

// Ordinary least squares on {1, t, t^2}. The abscissa is internally
// mapped to [0, 1] before solving the normal equations in extended
// precision; coefficients are reported in original units. Throws
// DegenerateDesign with fewer than 3 distinct ts.
QuadraticFit quadratic_fit(const std::vector<double>& ts, const std::vector<double>& ys);

double evaluate_fit(const QuadraticFit& fit, double t);

enum class FitTarget { Entropy, EntropyDelta };

struct BatchError {
    std::string genome_id;
    std::string message;
};

struct BatchResult {
    std::vector<Measure> measures;           // effective list, fit target included
    std::size_t fit_measure = 0;             // index of the fit target in `measures`
    std::vector<Trajectory> trajectories;    // corpus order, failed entries empty
    std::vector<QuadraticFit> fits;          // per genome, on the fit target
    std::vector<bool> ok;                    // per genome success flag
    std::vector<BatchError> errors;
    double min_r2 = 1.0;
    double pct1_r2 = 1.0;  // 1st-percentile R^2 (nearest-rank)
};

// Runs one trajectory per genome. Seeds derive from config.seed (the
// master seed) and the genome id, so corpus order does not matter.
// The fit target measure (triplet entropy or its delta) is computed
// even when absent from spec.measures. Per-genome failures are
// recorded and the run continues. threads <= 1 runs serially.
BatchResult batch_run(const std::vector<Genome>& corpus, const MutationConfig& config,
                      const TrajectorySpec& spec, FitTarget target = FitTarget::Entropy,
                      std::size_t threads = 1, const Genome* reference = nullptr);

}  // namespace degradex
