#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "degradex/cluster.hpp"
#include "degradex/fasta.hpp"
#include "degradex/genome.hpp"
#include "degradex/mutation.hpp"
#include "degradex/trajectory.hpp"

namespace degradex {

// FNV-1a over bytes; used for corpus and artifact fingerprints.
std::uint64_t fnv1a64(std::string_view bytes);

struct PlantSpec {
    std::size_t count = 0;
    std::size_t iterations = 2000;
};

struct PlantRecord {
    std::string original_id;
    std::string planted_id;
};

// Selects count genomes uniformly without replacement, degrades each by
// spec.iterations, and appends the copies with "_planted" ids (made
// unique if taken). Degradation seeds derive from (seed, original id).
// Throws CountTooLarge when count exceeds the corpus size.
std::vector<PlantRecord> plant_outliers(std::vector<Genome>& corpus, const PlantSpec& spec,
                                        const MutationConfig& config, std::uint64_t seed);

struct ClusteringConfig {
    Linkage linkage = Linkage::Ward;
    std::size_t fixed_k = 0;  // 0 selects k by Calinski-Harabasz over [k_min, k_max]
    std::size_t k_min = 2;
    std::size_t k_max = 12;
};

struct RunConfig {
    std::string corpus_path;
    std::string output_dir = "degradex-out";
    std::uint64_t master_seed = 0;
    SanitizePolicy ambiguous = SanitizePolicy::RandomReplace;
    MutationConfig mutation;  // per-genome seeds derive from master_seed and the id
    TrajectorySpec trajectory;
    FitTarget fit_target = FitTarget::Entropy;
    ClusteringConfig fit_clustering;                               // on quadratic coefficients
    ClusteringConfig triplet_clustering{Linkage::Complete, 0, 2, 12};  // on word distributions
    bool cluster_triplets = true;  // also cluster 64-dim triplet features and cross-tabulate
    PlantSpec plant;
    double outlier_threshold = 0.02;  // small-cluster fraction
    std::size_t threads = 1;
};

struct OutlierRow {
    std::string id;
    int cluster = 0;
    std::size_t cluster_size = 0;
    QuadraticFit fit;
    std::string flag;  // "bulk" or "small-cluster", derived from cluster size only
    bool planted = false;
};

struct OutlierReport {
    std::vector<OutlierRow> rows;  // corpus order
    std::size_t n = 0;
    std::size_t k = 0;
    double threshold = 0.0;
    std::vector<std::size_t> cluster_sizes;  // per label
    std::vector<double> centroid_nn;         // per label, distance to nearest centroid
    std::vector<std::string> flagged;        // ids with flag == "small-cluster"
};

// Marks members of clusters smaller than threshold * n. Provenance
// (planted) is carried separately and never drives the flag. Throws
// ConfigError when threshold is outside (0, 1).
OutlierReport flag_outliers(const ClusterModel& model, const std::vector<std::string>& ids,
                            const std::vector<QuadraticFit>& fits,
                            const FeatureMatrix& centroid_matrix, double threshold);

struct PipelineResult {
    std::string output_dir;
    OutlierReport report;
    std::size_t k_fits = 0;
    std::size_t k_triplets = 0;  // 0 when triplet clustering is off
    double min_r2 = 1.0;
    double pct1_r2 = 1.0;
    std::vector<PlantRecord> provenance;
    std::vector<std::string> artifacts;  // file names written under output_dir
};

// Full run: parse, optional plant, trajectories and fits, standardize,
// cluster, embed, flag, and write every artifact plus report.json and
// manifest.json. All randomness derives from config.master_seed, so a
// rerun with the same corpus bytes and config is byte-identical. On a
// stage failure a FAILED_<stage>.txt marker is left in the output
// directory and the error propagates.
PipelineResult run_pipeline(const RunConfig& config);

// Same, with a pre-loaded corpus (corpus_path is recorded but not read).
// Throws CorpusEmpty on an empty corpus.
PipelineResult run_pipeline(const RunConfig& config, std::vector<Genome> corpus);

// Manifest round-trip: the manifest stores every parameter except the
// output directory, which is chosen at invocation time.
RunConfig load_manifest(const std::string& path);

}  // namespace degradex
