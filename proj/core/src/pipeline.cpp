#include "degradex/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "degradex/csv.hpp"
#include "degradex/errors.hpp"
#include "degradex/ngram.hpp"
#include "degradex/rng.hpp"

namespace degradex {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<PlantRecord> plant_outliers(std::vector<Genome>& corpus, const PlantSpec& spec,
                                        const MutationConfig& config, std::uint64_t seed) {
    if (spec.count > corpus.size()) {
        throw CountTooLarge("cannot plant " + std::to_string(spec.count) +
                            " outliers into a corpus of " + std::to_string(corpus.size()));
    }
    if (spec.count == 0) return {};

    // Partial Fisher-Yates gives a uniform sample without replacement.
    Rng rng(seed);
    std::vector<std::size_t> indices(corpus.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    for (std::size_t i = 0; i < spec.count; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(
                    rng.uniform_below(static_cast<std::uint64_t>(indices.size() - i)));
        std::swap(indices[i], indices[j]);
    }
    std::vector<std::size_t> chosen(indices.begin(),
                                    indices.begin() + static_cast<std::ptrdiff_t>(spec.count));
    std::sort(chosen.begin(), chosen.end());

    std::unordered_set<std::string> taken;
    taken.reserve(corpus.size() + spec.count);
    for (const Genome& g : corpus) taken.insert(g.id);

    std::vector<PlantRecord> provenance;
    provenance.reserve(spec.count);
    const std::vector<std::size_t> checkpoints =
        spec.iterations == 0 ? std::vector<std::size_t>{0}
                             : std::vector<std::size_t>{0, spec.iterations};
    for (const std::size_t idx : chosen) {
        const Genome& original = corpus[idx];
        MutationConfig cfg = config;
        cfg.seed = derive_seed(seed, original.id);
        Genome planted = degrade(original, cfg, spec.iterations, checkpoints)
                             .snapshots.back();
        planted.id = original.id + "_planted";
        for (int suffix = 2; !taken.insert(planted.id).second; ++suffix) {
            planted.id = original.id + "_planted_" + std::to_string(suffix);
        }
        planted.description = "degraded copy of " + original.id;
        provenance.push_back({original.id, planted.id});
        corpus.push_back(std::move(planted));
    }
    return provenance;
}

OutlierReport flag_outliers(const ClusterModel& model, const std::vector<std::string>& ids,
                            const std::vector<QuadraticFit>& fits,
                            const FeatureMatrix& centroid_matrix, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw ConfigError("outlier threshold must lie in (0, 1)");
    }
    if (ids.size() != model.assignments.size() || fits.size() != ids.size()) {
        throw ConfigError("ids, fits and assignments must align");
    }

    OutlierReport report;
    report.n = ids.size();
    report.k = model.k;
    report.threshold = threshold;
    report.cluster_sizes = model.sizes;

    report.centroid_nn.assign(model.k, 0.0);
    if (model.k >= 2) {
        const std::vector<double> d = euclidean_distances(centroid_matrix);
        for (std::size_t g = 0; g < model.k; ++g) {
            double nearest = std::numeric_limits<double>::infinity();
            for (std::size_t o = 0; o < model.k; ++o) {
                if (o != g) nearest = std::min(nearest, d[g * model.k + o]);
            }
            report.centroid_nn[g] = nearest;
        }
    }

    const double cutoff = threshold * static_cast<double>(ids.size());
    report.rows.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        OutlierRow row;
        row.id = ids[i];
        row.cluster = model.assignments[i];
        row.cluster_size = model.sizes[static_cast<std::size_t>(row.cluster) - 1];
        row.fit = fits[i];
        row.flag =
            static_cast<double>(row.cluster_size) < cutoff ? "small-cluster" : "bulk";
        if (row.flag == "small-cluster") report.flagged.push_back(row.id);
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace {

std::ofstream open_artifact(const fs::path& dir, const std::string& name,
                            std::vector<std::string>& artifacts) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) {
        throw Error("cannot write artifact: " + (dir / name).string());
    }
    artifacts.push_back(name);
    return out;
}

json clustering_to_json(const ClusteringConfig& c) {
    return json{{"linkage", std::string(to_string(c.linkage))},
                {"fixed_k", c.fixed_k},
                {"k_min", c.k_min},
                {"k_max", c.k_max}};
}

ClusteringConfig clustering_from_json(const json& j) {
    ClusteringConfig c;
    c.linkage = linkage_from_string(j.at("linkage").get<std::string>());
    c.fixed_k = j.at("fixed_k").get<std::size_t>();
    c.k_min = j.at("k_min").get<std::size_t>();
    c.k_max = j.at("k_max").get<std::size_t>();
    return c;
}

json manifest_json(const RunConfig& config, std::uint64_t corpus_fingerprint) {
    json measures = json::array();
    for (const Measure& m : config.trajectory.measures) {
        measures.push_back(measure_label(m));
    }
    char fp[32];
    std::snprintf(fp, sizeof(fp), "%016llx",
                  static_cast<unsigned long long>(corpus_fingerprint));
    return json{
        {"ambiguous", std::string(to_string(config.ambiguous))},
        {"cluster_triplets", config.cluster_triplets},
        {"corpus", config.corpus_path},
        {"corpus_fingerprint", fp},
        {"fit_clustering", clustering_to_json(config.fit_clustering)},
        {"fit_target",
         config.fit_target == FitTarget::Entropy ? "entropy" : "entropy_delta"},
        {"master_seed", config.master_seed},
        {"mutation",
         {{"p_snp", config.mutation.p_snp},
          {"p_ins", config.mutation.p_ins},
          {"p_del", config.mutation.p_del},
          {"p_inv", config.mutation.p_inv},
          {"p_dup", config.mutation.p_dup},
          {"p_trans", config.mutation.p_trans},
          {"indel_len_geom_p", config.mutation.indel_len_geom_p},
          {"sv_len_min", config.mutation.sv_len_min},
          {"sv_len_max", config.mutation.sv_len_max}}},
        {"outlier_threshold", config.outlier_threshold},
        {"plant", {{"count", config.plant.count}, {"iterations", config.plant.iterations}}},
        {"threads", config.threads},
        {"trajectory",
         {{"checkpoints", config.trajectory.checkpoints},
          {"measures", measures},
          {"origin", std::string(to_string(config.trajectory.origin))},
          {"reference_id", config.trajectory.reference_id}}},
        {"triplet_clustering", clustering_to_json(config.triplet_clustering)},
    };
}

// Clamps the auto-selection window to the data size; a fixed k is
// passed through so its own validation fires.
std::size_t choose_k(const ClusterTree& tree, const FeatureMatrix& matrix,
                     const ClusteringConfig& cfg, SelectKResult* table_out) {
    if (cfg.fixed_k > 0) return cfg.fixed_k;
    const std::size_t n = matrix.rows();
    if (n < 3) return 1;  // no valid selection range; everything in one cluster
    const std::size_t k_max = std::min(cfg.k_max, n - 1);
    const std::size_t k_min = std::max<std::size_t>(2, std::min(cfg.k_min, k_max));
    SelectKResult result = select_k(tree, matrix, k_min, k_max);
    if (table_out) *table_out = std::move(result);
    return table_out ? table_out->k : result.k;
}

}  // namespace

RunConfig load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open manifest: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("malformed manifest: " + std::string(e.what()));
    }
    try {
        RunConfig config;
        config.corpus_path = j.at("corpus").get<std::string>();
        config.master_seed = j.at("master_seed").get<std::uint64_t>();
        config.ambiguous =
            sanitize_policy_from_string(j.at("ambiguous").get<std::string>());
        const json& m = j.at("mutation");
        config.mutation.p_snp = m.at("p_snp").get<double>();
        config.mutation.p_ins = m.at("p_ins").get<double>();
        config.mutation.p_del = m.at("p_del").get<double>();
        config.mutation.p_inv = m.at("p_inv").get<double>();
        config.mutation.p_dup = m.at("p_dup").get<double>();
        config.mutation.p_trans = m.at("p_trans").get<double>();
        config.mutation.indel_len_geom_p = m.at("indel_len_geom_p").get<double>();
        config.mutation.sv_len_min = m.at("sv_len_min").get<std::size_t>();
        config.mutation.sv_len_max = m.at("sv_len_max").get<std::size_t>();
        const json& t = j.at("trajectory");
        config.trajectory.checkpoints =
            t.at("checkpoints").get<std::vector<std::size_t>>();
        config.trajectory.measures.clear();
        for (const json& name : t.at("measures")) {
            config.trajectory.measures.push_back(
                measure_from_string(name.get<std::string>()));
        }
        config.trajectory.origin = origin_from_string(t.at("origin").get<std::string>());
        config.trajectory.reference_id = t.at("reference_id").get<std::string>();
        config.fit_target = j.at("fit_target").get<std::string>() == "entropy"
                                ? FitTarget::Entropy
                                : FitTarget::EntropyDelta;
        config.fit_clustering = clustering_from_json(j.at("fit_clustering"));
        config.triplet_clustering = clustering_from_json(j.at("triplet_clustering"));
        config.cluster_triplets = j.at("cluster_triplets").get<bool>();
        config.plant.count = j.at("plant").at("count").get<std::size_t>();
        config.plant.iterations = j.at("plant").at("iterations").get<std::size_t>();
        config.outlier_threshold = j.at("outlier_threshold").get<double>();
        config.threads = j.at("threads").get<std::size_t>();
        return config;
    } catch (const json::exception& e) {
        throw ConfigError("manifest missing or mistyped field: " + std::string(e.what()));
    }
}

PipelineResult run_pipeline(const RunConfig& config) {
    std::ifstream in(config.corpus_path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open corpus: " + config.corpus_path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string bytes = buffer.str();
    std::istringstream stream(bytes);
    std::vector<Genome> corpus = parse_fasta(stream, config.ambiguous,
                                             derive_seed(config.master_seed, "sanitize"));
    return run_pipeline(config, std::move(corpus));
}

PipelineResult run_pipeline(const RunConfig& config, std::vector<Genome> corpus) {
    const fs::path dir(config.output_dir);
    std::string stage = "validate";
    try {
        config.mutation.validate();
        if (!(config.outlier_threshold > 0.0 && config.outlier_threshold < 1.0)) {
            throw ConfigError("outlier threshold must lie in (0, 1)");
        }
        if (corpus.empty()) {
            throw CorpusEmpty("the corpus has no genomes");
        }
        {
            std::unordered_set<std::string> ids;
            ids.reserve(corpus.size());
            for (const Genome& g : corpus) {
                if (!ids.insert(g.id).second) {
                    throw ParseError("duplicate genome id: " + g.id);
                }
            }
        }
        fs::create_directories(dir);

        // The corpus fingerprint covers the canonical serialization, so
        // the in-memory and file entry points agree after a round-trip.
        std::uint64_t fingerprint;
        {
            std::ostringstream canon;
            write_fasta(corpus, canon);
            fingerprint = fnv1a64(canon.str());
        }

        PipelineResult result;
        result.output_dir = config.output_dir;

        stage = "plant";
        if (config.plant.count > 0) {
            result.provenance =
                plant_outliers(corpus, config.plant, config.mutation,
                               derive_seed(config.master_seed, "plant"));
        }
        std::unordered_set<std::string> planted_ids;
        for (const PlantRecord& p : result.provenance) planted_ids.insert(p.planted_id);

        stage = "trajectories";
        const Genome* reference = nullptr;
        if (config.trajectory.origin == OriginKind::Reference) {
            for (const Genome& g : corpus) {
                if (g.id == config.trajectory.reference_id) {
                    reference = &g;
                    break;
                }
            }
            if (!reference) {
                throw ConfigError("reference genome not found in corpus: " +
                                  config.trajectory.reference_id);
            }
        }

        MutationConfig mutation = config.mutation;
        mutation.seed = config.master_seed;
        const BatchResult batch = batch_run(corpus, mutation, config.trajectory,
                                            config.fit_target, config.threads, reference);
        result.min_r2 = batch.min_r2;
        result.pct1_r2 = batch.pct1_r2;

        std::vector<std::size_t> ok_rows;
        std::vector<std::string> ids;
        std::vector<QuadraticFit> fits;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            if (!batch.ok[i]) continue;
            ok_rows.push_back(i);
            ids.push_back(corpus[i].id);
            fits.push_back(batch.fits[i]);
        }
        if (ok_rows.empty()) {
            throw Error("every trajectory failed: " +
                        (batch.errors.empty() ? std::string("unknown cause")
                                              : batch.errors.front().message));
        }

        stage = "standardize";
        FeatureMatrix raw;
        raw.row_ids = ids;
        raw.col_names = {"c0", "c1", "c2"};
        raw.values.reserve(ids.size() * 3);
        for (const QuadraticFit& f : fits) {
            raw.values.push_back(f.c0);
            raw.values.push_back(f.c1);
            raw.values.push_back(f.c2);
        }
        const FeatureMatrix features = standardize(raw);

        stage = "cluster";
        const ClusterTree tree = hclust(features, config.fit_clustering.linkage);
        SelectKResult k_table;
        const std::size_t k = choose_k(tree, features, config.fit_clustering, &k_table);
        const ClusterModel model = cut_tree(tree, k);
        const FeatureMatrix cents = centroids(features, model);
        result.k_fits = k;

        stage = "embed";
        Embedding2D embedding;
        const bool embedded = model.k >= 3;
        if (embedded) {
            embedding = classical_mds(euclidean_distances(cents), model.k);
        }
        const std::vector<double> explained = variance_explained(features, model);

        stage = "flag";
        result.report =
            flag_outliers(model, ids, fits, cents, config.outlier_threshold);
        for (OutlierRow& row : result.report.rows) {
            row.planted = planted_ids.count(row.id) > 0;
        }

        stage = "triplet-cluster";
        FeatureMatrix triplet_features;
        ClusterTree triplet_tree;
        ClusterModel triplet_model;
        SelectKResult triplet_k_table;
        CrossTab crosstab;
        if (config.cluster_triplets) {
            triplet_features.row_ids = ids;
            triplet_features.col_names.reserve(64);
            for (std::size_t w = 0; w < 64; ++w) {
                triplet_features.col_names.push_back(word_string(3, w));
            }
            triplet_features.values.reserve(ids.size() * 64);
            for (const std::size_t row : ok_rows) {
                const NGramDistribution d = ngram_distribution(corpus[row].bases, 3);
                for (std::size_t w = 0; w < 64; ++w) {
                    triplet_features.values.push_back(d.probability(w));
                }
            }
            triplet_features = standardize(triplet_features);
            triplet_tree = hclust(triplet_features, config.triplet_clustering.linkage);
            const std::size_t tk = choose_k(triplet_tree, triplet_features,
                                            config.triplet_clustering, &triplet_k_table);
            triplet_model = cut_tree(triplet_tree, tk);
            result.k_triplets = tk;
            crosstab = cross_tabulate(ids, model.assignments, ids,
                                      triplet_model.assignments);
        }

        stage = "write";
        std::vector<std::string>& artifacts = result.artifacts;
        {
            auto out = open_artifact(dir, "trajectories.csv", artifacts);
            write_csv_row(out, {"genome_id", "checkpoint", "measure", "value"});
            for (const std::size_t row : ok_rows) {
                const Trajectory& t = batch.trajectories[row];
                for (std::size_t m = 0; m < batch.measures.size(); ++m) {
                    const std::string label = measure_label(batch.measures[m]);
                    for (std::size_t c = 0; c < t.checkpoints.size(); ++c) {
                        write_csv_row(out, {t.genome_id, std::to_string(t.checkpoints[c]),
                                            label, format_double(t.values[m][c])});
                    }
                }
            }
        }
        for (std::size_t m = 0; m < batch.measures.size(); ++m) {
            const std::string label = measure_label(batch.measures[m]);
            auto out = open_artifact(dir, "plot_" + label + ".csv", artifacts);
            write_csv_row(out, {"series", "x", "y"});
            for (const std::size_t row : ok_rows) {
                const Trajectory& t = batch.trajectories[row];
                for (std::size_t c = 0; c < t.checkpoints.size(); ++c) {
                    write_csv_row(out, {t.genome_id, std::to_string(t.checkpoints[c]),
                                        format_double(t.values[m][c])});
                }
            }
        }
        {
            auto out = open_artifact(dir, "fits.csv", artifacts);
            write_csv_row(out, {"genome_id", "c0", "c1", "c2", "r2"});
            for (std::size_t i = 0; i < ids.size(); ++i) {
                write_csv_row(out, {ids[i], format_double(fits[i].c0),
                                    format_double(fits[i].c1), format_double(fits[i].c2),
                                    format_double(fits[i].r2)});
            }
        }
        {
            auto out = open_artifact(dir, "features.csv", artifacts);
            std::vector<std::string> header{"genome_id"};
            header.insert(header.end(), features.col_names.begin(),
                          features.col_names.end());
            write_csv_row(out, header);
            for (std::size_t r = 0; r < features.rows(); ++r) {
                std::vector<std::string> fields{features.row_ids[r]};
                for (std::size_t c = 0; c < features.cols(); ++c) {
                    fields.push_back(format_double(features.at(r, c)));
                }
                write_csv_row(out, fields);
            }
        }
        {
            auto out = open_artifact(dir, "assignments.csv", artifacts);
            write_csv_row(out, {"genome_id", "cluster"});
            for (std::size_t i = 0; i < ids.size(); ++i) {
                write_csv_row(out, {ids[i], std::to_string(model.assignments[i])});
            }
        }
        {
            auto out = open_artifact(dir, "centroids.csv", artifacts);
            std::vector<std::string> header{"cluster"};
            header.insert(header.end(), cents.col_names.begin(), cents.col_names.end());
            write_csv_row(out, header);
            for (std::size_t r = 0; r < cents.rows(); ++r) {
                std::vector<std::string> fields{cents.row_ids[r]};
                for (std::size_t c = 0; c < cents.cols(); ++c) {
                    fields.push_back(format_double(cents.at(r, c)));
                }
                write_csv_row(out, fields);
            }
        }
        {
            auto out = open_artifact(dir, "mds.csv", artifacts);
            write_csv_row(out, {"cluster", "x", "y"});
            if (embedded) {
                for (std::size_t g = 0; g < model.k; ++g) {
                    write_csv_row(out, {std::to_string(g + 1), format_double(embedding.x[g]),
                                        format_double(embedding.y[g])});
                }
            }
        }
        {
            auto out = open_artifact(dir, "variance_explained.csv", artifacts);
            write_csv_row(out, {"feature", "fraction"});
            for (std::size_t c = 0; c < features.cols(); ++c) {
                write_csv_row(out, {features.col_names[c], format_double(explained[c])});
            }
        }
        {
            auto out = open_artifact(dir, "merges.csv", artifacts);
            write_csv_row(out, {"step", "left", "right", "height"});
            for (std::size_t s = 0; s < tree.merges.size(); ++s) {
                write_csv_row(out, {std::to_string(s), std::to_string(tree.merges[s].left),
                                    std::to_string(tree.merges[s].right),
                                    format_double(tree.merges[s].height)});
            }
        }
        {
            auto out = open_artifact(dir, "dendrogram.newick", artifacts);
            out << dendrogram_newick(tree, ids) << '\n';
        }
        if (config.fit_clustering.fixed_k == 0) {
            auto out = open_artifact(dir, "select_k.csv", artifacts);
            write_csv_row(out, {"k", "calinski_harabasz", "selected"});
            for (const auto& [kk, ch] : k_table.table) {
                write_csv_row(out, {std::to_string(kk), format_double(ch),
                                    kk == k_table.k ? "1" : "0"});
            }
        }
        if (config.cluster_triplets) {
            {
                auto out = open_artifact(dir, "triplet_assignments.csv", artifacts);
                write_csv_row(out, {"genome_id", "cluster"});
                for (std::size_t i = 0; i < ids.size(); ++i) {
                    write_csv_row(out,
                                  {ids[i], std::to_string(triplet_model.assignments[i])});
                }
            }
            {
                auto out = open_artifact(dir, "triplet_dendrogram.newick", artifacts);
                out << dendrogram_newick(triplet_tree, ids) << '\n';
            }
            if (config.triplet_clustering.fixed_k == 0) {
                auto out = open_artifact(dir, "triplet_select_k.csv", artifacts);
                write_csv_row(out, {"k", "calinski_harabasz", "selected"});
                for (const auto& [kk, ch] : triplet_k_table.table) {
                    write_csv_row(out, {std::to_string(kk), format_double(ch),
                                        kk == triplet_k_table.k ? "1" : "0"});
                }
            }
            {
                auto out = open_artifact(dir, "crosstab.csv", artifacts);
                std::vector<std::string> header{"cluster"};
                for (std::size_t b = 0; b < crosstab.kb; ++b) {
                    header.push_back(std::to_string(b + 1));
                }
                header.push_back("total");
                write_csv_row(out, header);
                for (std::size_t a = 0; a < crosstab.ka; ++a) {
                    std::vector<std::string> fields{std::to_string(a + 1)};
                    for (std::size_t b = 0; b < crosstab.kb; ++b) {
                        fields.push_back(std::to_string(crosstab.at(a, b)));
                    }
                    fields.push_back(std::to_string(crosstab.row_sums[a]));
                    write_csv_row(out, fields);
                }
                std::vector<std::string> fields{"total"};
                for (std::size_t b = 0; b < crosstab.kb; ++b) {
                    fields.push_back(std::to_string(crosstab.col_sums[b]));
                }
                fields.push_back(std::to_string(crosstab.total));
                write_csv_row(out, fields);
            }
        }
        if (!result.provenance.empty()) {
            auto out = open_artifact(dir, "provenance.csv", artifacts);
            write_csv_row(out, {"original_id", "planted_id"});
            for (const PlantRecord& p : result.provenance) {
                write_csv_row(out, {p.original_id, p.planted_id});
            }
        }
        {
            json genomes = json::array();
            for (const OutlierRow& row : result.report.rows) {
                genomes.push_back({{"id", row.id},
                                   {"cluster", row.cluster},
                                   {"cluster_size", row.cluster_size},
                                   {"c0", row.fit.c0},
                                   {"c1", row.fit.c1},
                                   {"c2", row.fit.c2},
                                   {"r2", row.fit.r2},
                                   {"flag", row.flag},
                                   {"planted", row.planted}});
            }
            json errors = json::array();
            for (const BatchError& e : batch.errors) {
                errors.push_back({{"id", e.genome_id}, {"message", e.message}});
            }
            json report{
                {"n", result.report.n},
                {"threshold", result.report.threshold},
                {"clusters",
                 {{"k", result.report.k},
                  {"sizes", result.report.cluster_sizes},
                  {"centroid_nearest_distance", result.report.centroid_nn}}},
                {"fit_summary", {{"min_r2", batch.min_r2}, {"pct1_r2", batch.pct1_r2}}},
                {"flagged", result.report.flagged},
                {"genomes", genomes},
                {"errors", errors},
                {"mds_embedded", embedded},
                {"variance_explained", explained},
            };
            if (config.cluster_triplets) {
                report["triplet_clusters"] = {{"k", triplet_model.k},
                                              {"sizes", triplet_model.sizes}};
            }
            auto out = open_artifact(dir, "report.json", artifacts);
            out << report.dump(2) << '\n';
        }
        {
            auto out = open_artifact(dir, "manifest.json", artifacts);
            out << manifest_json(config, fingerprint).dump(2) << '\n';
        }
        return result;
    } catch (const std::exception& e) {
        std::ofstream marker(dir / ("FAILED_" + stage + ".txt"), std::ios::binary);
        if (marker) {
            marker << "stage " << stage << " failed: " << e.what() << '\n';
        }
        throw;
    }
}

}  // namespace degradex
