// Command-line front end. Data goes to files or standard output;
// progress and diagnostics go to standard error. Exit codes: 0 success,
// 1 usage, 2 data error, 3 internal.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "degradex/cluster.hpp"
#include "degradex/csv.hpp"
#include "degradex/edit_distance.hpp"
#include "degradex/errors.hpp"
#include "degradex/fasta.hpp"
#include "degradex/mutation.hpp"
#include "degradex/ngram.hpp"
#include "degradex/pipeline.hpp"
#include "degradex/rng.hpp"
#include "degradex/structure.hpp"
#include "degradex/trajectory.hpp"

namespace fs = std::filesystem;
using namespace degradex;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    std::string ambiguous = "replace";

    SanitizePolicy policy() const { return sanitize_policy_from_string(ambiguous); }
};

void add_mutation_options(CLI::App* cmd, MutationConfig& cfg) {
    cmd->add_option("--p-snp", cfg.p_snp, "Per-base substitution probability");
    cmd->add_option("--p-ins", cfg.p_ins, "Per-base insertion probability");
    cmd->add_option("--p-del", cfg.p_del, "Per-base deletion probability");
    cmd->add_option("--p-inv", cfg.p_inv, "Inversions per megabase per iteration");
    cmd->add_option("--p-dup", cfg.p_dup, "Duplications per megabase per iteration");
    cmd->add_option("--p-trans", cfg.p_trans, "Translocations per megabase per iteration");
    cmd->add_option("--indel-geom-p", cfg.indel_len_geom_p,
                    "Geometric length parameter for insertions and deletions");
    cmd->add_option("--sv-len-min", cfg.sv_len_min, "Minimum structural variant length");
    cmd->add_option("--sv-len-max", cfg.sv_len_max, "Maximum structural variant length");
}

std::vector<Genome> load_corpus(const std::string& path, const GlobalOpts& global) {
    return parse_fasta_file(path, global.policy(), derive_seed(global.seed, "sanitize"));
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path);
    }
    return out;
}

// Writes to the path, or to stdout when the path is empty or "-".
class OutStream {
  public:
    explicit OutStream(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = open_output(path);
        }
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }

  private:
    std::optional<std::ofstream> file_;
};

// Minimal CSV reader for this tool's own outputs: quoted fields with
// doubled quotes, no embedded newlines.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    return rows;
}

double parse_field_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad numeric field for " + what + ": '" + s + "'");
    }
}

int parse_field_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad integer field for " + what + ": '" + s + "'");
    }
}

// ---------------------------------------------------------------- degrade

struct DegradeOpts {
    std::string input, out_dir;
    std::size_t iterations = 2000;
    std::vector<std::size_t> checkpoints;
    MutationConfig mutation;
    bool events = false;
};

void run_degrade(const DegradeOpts& opt, const GlobalOpts& global) {
    const std::vector<Genome> corpus = load_corpus(opt.input, global);
    std::vector<std::size_t> checkpoints = opt.checkpoints;
    if (checkpoints.empty()) {
        checkpoints.push_back(0);
        if (opt.iterations > 0) checkpoints.push_back(opt.iterations);
    }
    validate_checkpoints(checkpoints, opt.iterations);
    fs::create_directories(opt.out_dir);

    std::vector<std::ofstream> snaps;
    snaps.reserve(checkpoints.size());
    for (const std::size_t t : checkpoints) {
        snaps.push_back(
            open_output((fs::path(opt.out_dir) / ("checkpoint_" + std::to_string(t) + ".fa"))
                             .string()));
    }
    std::optional<std::ofstream> events;
    if (opt.events) {
        events = open_output((fs::path(opt.out_dir) / "events.csv").string());
        write_csv_row(*events, {"genome_id", "iteration", "kind", "position", "length"});
    }

    for (const Genome& g : corpus) {
        MutationConfig cfg = opt.mutation;
        cfg.seed = derive_seed(global.seed, g.id);
        std::size_t slot = 0;
        degrade_visit(
            g.bases, cfg, opt.iterations, checkpoints,
            [&](std::size_t, std::string_view bases) {
                Genome snap{g.id, g.description, std::string(bases)};
                write_fasta({snap}, snaps[slot++]);
            },
            opt.events ? [&](std::size_t iter, const std::vector<MutationEvent>& evs) {
                for (const MutationEvent& ev : evs) {
                    write_csv_row(*events, {g.id, std::to_string(iter),
                                            std::string(to_string(ev.kind)),
                                            std::to_string(ev.position),
                                            std::to_string(ev.length)});
                }
            } : std::function<void(std::size_t, const std::vector<MutationEvent>&)>());
        std::cerr << "degraded " << g.id << " through " << opt.iterations
                  << " iterations\n";
    }
}

// ---------------------------------------------------------------- metrics

struct MetricsOpts {
    std::string input, reference, out;
    int n = 3;
};

void run_metrics(const MetricsOpts& opt, const GlobalOpts& global) {
    const std::vector<Genome> corpus = load_corpus(opt.input, global);
    std::optional<Genome> ref;
    std::optional<NGramDistribution> ref_dist;
    if (!opt.reference.empty()) {
        std::vector<Genome> refs = load_corpus(opt.reference, global);
        if (refs.empty()) throw CorpusEmpty("reference file has no genomes");
        ref = std::move(refs.front());
        ref_dist = ngram_distribution(ref->bases, opt.n);
    }

    OutStream out(opt.out);
    std::vector<std::string> header{"genome_id", "length", "n", "entropy",
                                    "max_entropy_fraction"};
    if (ref) {
        header.insert(header.end(),
                      {"hellinger_to_ref", "levenshtein_to_ref", "hamming_to_ref"});
    }
    write_csv_row(out.get(), header);
    for (const Genome& g : corpus) {
        const NGramDistribution dist = ngram_distribution(g.bases, opt.n);
        const double h = entropy(dist);
        std::vector<std::string> row{g.id, std::to_string(g.length()),
                                     std::to_string(opt.n), format_double(h),
                                     format_double(h / max_entropy(opt.n))};
        if (ref) {
            row.push_back(format_double(hellinger(dist, *ref_dist)));
            row.push_back(std::to_string(levenshtein(g.bases, ref->bases)));
            row.push_back(g.length() == ref->length()
                              ? std::to_string(hamming(g.bases, ref->bases))
                              : std::string());
        }
        write_csv_row(out.get(), row);
    }
}

// -------------------------------------------------------------- structure

struct ScanOpts {
    std::string input, out;
    std::vector<std::size_t> lengths;
    std::vector<std::size_t> iterations{0};
    MutationConfig mutation;
    bool distinct = false;
};

void run_scan(const ScanOpts& opt, const GlobalOpts& global, StructureKind kind) {
    const std::vector<Genome> corpus = load_corpus(opt.input, global);
    OutStream out(opt.out);

    std::vector<std::string> header{"genome_id", "iteration"};
    const char prefix = kind == StructureKind::Repeats ? 'k' : 'h';
    for (const std::size_t len : opt.lengths) {
        header.push_back(prefix + std::to_string(len));
    }
    write_csv_row(out.get(), header);

    for (const Genome& g : corpus) {
        MutationConfig cfg = opt.mutation;
        cfg.seed = derive_seed(global.seed, g.id);
        const AttritionTable table =
            attrition_table(g, cfg, opt.iterations, kind, opt.lengths);
        const auto& cells = opt.distinct ? table.distinct : table.counts;
        for (std::size_t r = 0; r < table.iterations.size(); ++r) {
            std::vector<std::string> row{g.id, std::to_string(table.iterations[r])};
            for (std::size_t c = 0; c < table.lengths.size(); ++c) {
                row.push_back(std::to_string(cells[r][c]));
            }
            write_csv_row(out.get(), row);
        }
    }
}

// -------------------------------------------------------------- trajectory

struct TrajectoryOpts {
    std::string input, out, fits_out, reference_id;
    std::vector<std::string> measures{"triplet_entropy"};
    std::string origin = "parent";
    std::vector<std::size_t> checkpoints;
    std::string fit_target = "entropy";
    MutationConfig mutation;
};

void run_trajectory_cmd(const TrajectoryOpts& opt, const GlobalOpts& global) {
    const std::vector<Genome> corpus = load_corpus(opt.input, global);

    TrajectorySpec spec;
    spec.measures.clear();
    for (const std::string& name : opt.measures) {
        spec.measures.push_back(measure_from_string(name));
    }
    spec.origin = origin_from_string(opt.origin);
    spec.reference_id = opt.reference_id;
    if (!opt.checkpoints.empty()) spec.checkpoints = opt.checkpoints;

    const Genome* reference = nullptr;
    if (spec.origin == OriginKind::Reference) {
        for (const Genome& g : corpus) {
            if (g.id == spec.reference_id) reference = &g;
        }
        if (!reference) {
            throw ConfigError("reference genome not found in corpus: " + spec.reference_id);
        }
    }

    MutationConfig cfg = opt.mutation;
    cfg.seed = global.seed;
    const FitTarget target = opt.fit_target == "entropy_delta" ? FitTarget::EntropyDelta
                                                               : FitTarget::Entropy;
    const BatchResult batch =
        batch_run(corpus, cfg, spec, target, global.threads, reference);

    OutStream out(opt.out);
    write_csv_row(out.get(), {"genome_id", "checkpoint", "measure", "value"});
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!batch.ok[i]) continue;
        const Trajectory& t = batch.trajectories[i];
        for (std::size_t m = 0; m < batch.measures.size(); ++m) {
            const std::string label = measure_label(batch.measures[m]);
            for (std::size_t c = 0; c < t.checkpoints.size(); ++c) {
                write_csv_row(out.get(), {t.genome_id, std::to_string(t.checkpoints[c]),
                                          label, format_double(t.values[m][c])});
            }
        }
    }
    if (!opt.fits_out.empty()) {
        auto fits = open_output(opt.fits_out);
        write_csv_row(fits, {"genome_id", "c0", "c1", "c2", "r2"});
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            if (!batch.ok[i]) continue;
            const QuadraticFit& f = batch.fits[i];
            write_csv_row(fits, {corpus[i].id, format_double(f.c0), format_double(f.c1),
                                 format_double(f.c2), format_double(f.r2)});
        }
    }
    for (const BatchError& e : batch.errors) {
        std::cerr << "trajectory failed for " << e.genome_id << ": " << e.message << '\n';
    }
    if (!corpus.empty() && batch.errors.size() == corpus.size()) {
        throw ConfigError("every trajectory failed: " + batch.errors.front().message);
    }
    std::cerr << "fit R^2: min " << batch.min_r2 << ", 1st percentile " << batch.pct1_r2
              << '\n';
}

// ----------------------------------------------------------------- cluster

struct ClusterOpts {
    std::string features = "fits";
    std::string input, out_dir;
    std::string linkage = "ward";
    std::size_t fixed_k = 0;
    std::string k_range = "2..12";
};

std::pair<std::size_t, std::size_t> parse_k_range(const std::string& text) {
    const std::size_t dots = text.find("..");
    if (dots == std::string::npos) {
        throw ConfigError("k range must look like A..B: '" + text + "'");
    }
    try {
        const std::size_t a = std::stoull(text.substr(0, dots));
        const std::size_t b = std::stoull(text.substr(dots + 2));
        return {a, b};
    } catch (const std::exception&) {
        throw ConfigError("k range must look like A..B: '" + text + "'");
    }
}

FeatureMatrix load_fit_features(const std::string& path) {
    const std::vector<std::vector<std::string>> rows = read_csv(path);
    if (rows.size() < 2 || rows.front().size() < 4) {
        throw ParseError("fits CSV needs a header and rows: genome_id,c0,c1,c2[,r2]");
    }
    FeatureMatrix m;
    m.col_names = {"c0", "c1", "c2"};
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() < 4) {
            throw ParseError("fits CSV row " + std::to_string(r) + " is too short");
        }
        m.row_ids.push_back(row[0]);
        for (std::size_t c = 1; c <= 3; ++c) {
            m.values.push_back(parse_field_double(row[c], rows.front()[c]));
        }
    }
    return m;
}

FeatureMatrix load_triplet_features(const std::string& path, const GlobalOpts& global) {
    const std::vector<Genome> corpus = load_corpus(path, global);
    FeatureMatrix m;
    m.col_names.reserve(64);
    for (std::size_t w = 0; w < 64; ++w) m.col_names.push_back(word_string(3, w));
    for (const Genome& g : corpus) {
        m.row_ids.push_back(g.id);
        const NGramDistribution d = ngram_distribution(g.bases, 3);
        for (std::size_t w = 0; w < 64; ++w) m.values.push_back(d.probability(w));
    }
    return m;
}

void run_cluster(const ClusterOpts& opt, const GlobalOpts& global) {
    const FeatureMatrix raw = opt.features == "triplets"
                                  ? load_triplet_features(opt.input, global)
                                  : load_fit_features(opt.input);
    const FeatureMatrix features = standardize(raw);
    const Linkage linkage = linkage_from_string(opt.linkage);
    const ClusterTree tree = hclust(features, linkage);

    std::size_t k = opt.fixed_k;
    SelectKResult table;
    if (k == 0) {
        auto [k_min, k_max] = parse_k_range(opt.k_range);
        k_max = std::min(k_max, features.rows() - 1);
        k_min = std::min(k_min, k_max);
        table = select_k(tree, features, k_min, k_max);
        k = table.k;
    }
    const ClusterModel model = cut_tree(tree, k);
    const FeatureMatrix cents = centroids(features, model);
    const std::vector<double> explained = variance_explained(features, model);

    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    {
        auto out = open_output((dir / "assignments.csv").string());
        write_csv_row(out, {"genome_id", "cluster"});
        for (std::size_t i = 0; i < features.rows(); ++i) {
            write_csv_row(out, {features.row_ids[i], std::to_string(model.assignments[i])});
        }
    }
    {
        auto out = open_output((dir / "centroids.csv").string());
        std::vector<std::string> header{"cluster"};
        header.insert(header.end(), cents.col_names.begin(), cents.col_names.end());
        write_csv_row(out, header);
        for (std::size_t r = 0; r < cents.rows(); ++r) {
            std::vector<std::string> row{cents.row_ids[r]};
            for (std::size_t c = 0; c < cents.cols(); ++c) {
                row.push_back(format_double(cents.at(r, c)));
            }
            write_csv_row(out, row);
        }
    }
    {
        auto out = open_output((dir / "mds.csv").string());
        write_csv_row(out, {"cluster", "x", "y"});
        if (model.k >= 3) {
            const Embedding2D emb = classical_mds(euclidean_distances(cents), model.k);
            for (std::size_t g = 0; g < model.k; ++g) {
                write_csv_row(out, {std::to_string(g + 1), format_double(emb.x[g]),
                                    format_double(emb.y[g])});
            }
        }
    }
    {
        auto out = open_output((dir / "variance_explained.csv").string());
        write_csv_row(out, {"feature", "fraction"});
        for (std::size_t c = 0; c < features.cols(); ++c) {
            write_csv_row(out, {features.col_names[c], format_double(explained[c])});
        }
    }
    {
        auto out = open_output((dir / "dendrogram.newick").string());
        out << dendrogram_newick(tree, features.row_ids) << '\n';
    }
    if (opt.fixed_k == 0) {
        auto out = open_output((dir / "select_k.csv").string());
        write_csv_row(out, {"k", "calinski_harabasz", "selected"});
        for (const auto& [kk, ch] : table.table) {
            write_csv_row(out, {std::to_string(kk), format_double(ch),
                                kk == table.k ? "1" : "0"});
        }
    }
    std::cerr << "clustered " << features.rows() << " rows into " << model.k
              << " clusters\n";
}

// ---------------------------------------------------------------- crosstab

struct CrosstabOpts {
    std::string a, b, out;
};

std::pair<std::vector<std::string>, std::vector<int>> load_assignments(
    const std::string& path) {
    const std::vector<std::vector<std::string>> rows = read_csv(path);
    if (rows.size() < 2 || rows.front().size() < 2) {
        throw ParseError("assignments CSV needs a header and rows: genome_id,cluster");
    }
    std::vector<std::string> ids;
    std::vector<int> labels;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() < 2) {
            throw ParseError("assignments CSV row " + std::to_string(r) + " is too short");
        }
        ids.push_back(rows[r][0]);
        labels.push_back(parse_field_int(rows[r][1], "cluster"));
    }
    return {std::move(ids), std::move(labels)};
}

void run_crosstab(const CrosstabOpts& opt) {
    const auto [ids_a, labels_a] = load_assignments(opt.a);
    const auto [ids_b, labels_b] = load_assignments(opt.b);
    const CrossTab tab = cross_tabulate(ids_a, labels_a, ids_b, labels_b);

    OutStream out(opt.out);
    std::vector<std::string> header{"cluster"};
    for (std::size_t b = 0; b < tab.kb; ++b) header.push_back(std::to_string(b + 1));
    header.push_back("total");
    write_csv_row(out.get(), header);
    for (std::size_t a = 0; a < tab.ka; ++a) {
        std::vector<std::string> row{std::to_string(a + 1)};
        for (std::size_t b = 0; b < tab.kb; ++b) {
            row.push_back(std::to_string(tab.at(a, b)));
        }
        row.push_back(std::to_string(tab.row_sums[a]));
        write_csv_row(out.get(), row);
    }
    std::vector<std::string> row{"total"};
    for (std::size_t b = 0; b < tab.kb; ++b) {
        row.push_back(std::to_string(tab.col_sums[b]));
    }
    row.push_back(std::to_string(tab.total));
    write_csv_row(out.get(), row);
}

// ------------------------------------------------------------------- plant

struct PlantOpts {
    std::string input, output, provenance_out;
    std::size_t count = 10;
    std::size_t iterations = 2000;
    MutationConfig mutation;
};

void run_plant(const PlantOpts& opt, const GlobalOpts& global) {
    std::vector<Genome> corpus = load_corpus(opt.input, global);
    const PlantSpec spec{opt.count, opt.iterations};
    const std::vector<PlantRecord> provenance =
        plant_outliers(corpus, spec, opt.mutation, derive_seed(global.seed, "plant"));
    write_fasta_file(corpus, opt.output);

    OutStream out(opt.provenance_out);
    write_csv_row(out.get(), {"original_id", "planted_id"});
    for (const PlantRecord& p : provenance) {
        write_csv_row(out.get(), {p.original_id, p.planted_id});
    }
    std::cerr << "planted " << provenance.size() << " degraded genomes into "
              << opt.output << '\n';
}

// ---------------------------------------------------------------- pipeline

struct PipelineOpts {
    std::string corpus, out_dir = "degradex-out", manifest;
    MutationConfig mutation;
    std::vector<std::size_t> checkpoints;
    std::vector<std::string> measures;
    std::string origin, reference_id;
    std::string fit_target;
    std::string linkage;
    std::size_t fixed_k = 0;
    std::string k_range;
    bool no_triplets = false;
    std::size_t plant_count = 0;
    std::size_t plant_iters = 2000;
    double threshold = 0.02;
    // Tracks which flags were actually given so manifest values survive.
    CLI::App* cmd = nullptr;
};

void run_pipeline_cmd(const PipelineOpts& opt, const GlobalOpts& global,
                      const CLI::App& root) {
    RunConfig config;
    if (!opt.manifest.empty()) {
        config = load_manifest(opt.manifest);
    }
    config.output_dir = opt.out_dir;

    const auto given = [&](const std::string& name) {
        const CLI::Option* sub = opt.cmd->get_option_no_throw(name);
        const CLI::Option* top = root.get_option_no_throw(name);
        return (sub && sub->count() > 0) || (top && top->count() > 0);
    };
    if (!opt.corpus.empty()) config.corpus_path = opt.corpus;
    if (config.corpus_path.empty()) {
        throw ConfigError("pipeline needs a corpus path or --manifest");
    }
    if (opt.manifest.empty() || given("--seed")) config.master_seed = global.seed;
    if (opt.manifest.empty() || given("--threads")) config.threads = global.threads;
    if (opt.manifest.empty() || given("--ambiguous")) config.ambiguous = global.policy();

    if (opt.manifest.empty()) {
        config.mutation = opt.mutation;
    } else {
        // Manifest supplies the baseline; explicit flags override it.
        MutationConfig& m = config.mutation;
        if (given("--p-snp")) m.p_snp = opt.mutation.p_snp;
        if (given("--p-ins")) m.p_ins = opt.mutation.p_ins;
        if (given("--p-del")) m.p_del = opt.mutation.p_del;
        if (given("--p-inv")) m.p_inv = opt.mutation.p_inv;
        if (given("--p-dup")) m.p_dup = opt.mutation.p_dup;
        if (given("--p-trans")) m.p_trans = opt.mutation.p_trans;
        if (given("--indel-geom-p")) m.indel_len_geom_p = opt.mutation.indel_len_geom_p;
        if (given("--sv-len-min")) m.sv_len_min = opt.mutation.sv_len_min;
        if (given("--sv-len-max")) m.sv_len_max = opt.mutation.sv_len_max;
    }
    if (!opt.checkpoints.empty()) config.trajectory.checkpoints = opt.checkpoints;
    if (!opt.measures.empty()) {
        config.trajectory.measures.clear();
        for (const std::string& name : opt.measures) {
            config.trajectory.measures.push_back(measure_from_string(name));
        }
    }
    if (!opt.origin.empty()) config.trajectory.origin = origin_from_string(opt.origin);
    if (!opt.reference_id.empty()) config.trajectory.reference_id = opt.reference_id;
    if (!opt.fit_target.empty()) {
        config.fit_target = opt.fit_target == "entropy_delta" ? FitTarget::EntropyDelta
                                                              : FitTarget::Entropy;
    }
    if (!opt.linkage.empty()) {
        config.fit_clustering.linkage = linkage_from_string(opt.linkage);
    }
    if (opt.fixed_k > 0) config.fit_clustering.fixed_k = opt.fixed_k;
    if (!opt.k_range.empty()) {
        const auto [a, b] = parse_k_range(opt.k_range);
        config.fit_clustering.fixed_k = 0;
        config.fit_clustering.k_min = a;
        config.fit_clustering.k_max = b;
    }
    if (opt.no_triplets) config.cluster_triplets = false;
    if (given("--plant-count")) config.plant.count = opt.plant_count;
    if (given("--plant-iters")) config.plant.iterations = opt.plant_iters;
    if (given("--threshold")) config.outlier_threshold = opt.threshold;

    std::cerr << "pipeline: corpus " << config.corpus_path << ", output "
              << config.output_dir << '\n';
    const PipelineResult result = run_pipeline(config);
    std::cerr << "clustered " << result.report.n << " genomes into " << result.report.k
              << " clusters (R^2 min " << result.min_r2 << ")\n";
    std::cerr << "flagged " << result.report.flagged.size() << " genomes";
    if (!result.report.flagged.empty()) {
        std::cerr << ':';
        for (const std::string& id : result.report.flagged) std::cerr << ' ' << id;
    }
    std::cerr << '\n';
    std::cerr << "wrote " << result.artifacts.size() << " artifacts to "
              << result.output_dir << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genome database quality measurement by mutational degradation"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Plain-text key=value defaults; flags override");

    GlobalOpts global;
    app.add_option("--seed", global.seed, "Master seed for all randomness");
    app.add_option("--threads", global.threads, "Worker threads for batch stages");
    app.add_option("--ambiguous", global.ambiguous,
                   "Non-ACGT handling: reject, drop, or replace")
        ->check(CLI::IsMember({"reject", "drop", "replace"}));

    DegradeOpts degrade_opts;
    CLI::App* degrade_cmd =
        app.add_subcommand("degrade", "Iteratively mutate genomes, writing checkpoints");
    degrade_cmd->add_option("input", degrade_opts.input, "Input FASTA")->required();
    degrade_cmd->add_option("out_dir", degrade_opts.out_dir, "Output directory")
        ->required();
    degrade_cmd->add_option("--iters", degrade_opts.iterations, "Iteration count");
    degrade_cmd
        ->add_option("--checkpoints", degrade_opts.checkpoints,
                     "Comma-separated snapshot iterations (must start at 0)")
        ->delimiter(',');
    degrade_cmd->add_flag("--events", degrade_opts.events, "Also write events.csv");
    add_mutation_options(degrade_cmd, degrade_opts.mutation);

    MetricsOpts metrics_opts;
    CLI::App* metrics_cmd =
        app.add_subcommand("metrics", "Per-genome entropy and reference distances");
    metrics_cmd->add_option("input", metrics_opts.input, "Input FASTA")->required();
    metrics_cmd->add_option("--n", metrics_opts.n, "Word length for the distribution")
        ->check(CLI::Range(1, 8));
    metrics_cmd->add_option("--reference", metrics_opts.reference,
                            "FASTA whose first record is the comparison genome");
    metrics_cmd->add_option("--out", metrics_opts.out, "Output CSV (default stdout)");

    ScanOpts repeats_opts;
    repeats_opts.lengths = {20, 25, 29, 35, 40};
    CLI::App* repeats_cmd =
        app.add_subcommand("repeats", "Repeated-window attrition under degradation");
    repeats_cmd->add_option("input", repeats_opts.input, "Input FASTA")->required();
    repeats_cmd->add_option("--k", repeats_opts.lengths, "Comma-separated window lengths")
        ->delimiter(',');
    repeats_cmd
        ->add_option("--iters", repeats_opts.iterations,
                     "Comma-separated iteration grid (0 added if missing)")
        ->delimiter(',');
    repeats_cmd->add_flag("--distinct", repeats_opts.distinct,
                          "Report distinct repeated words instead of window counts");
    repeats_cmd->add_option("--out", repeats_opts.out, "Output CSV (default stdout)");
    add_mutation_options(repeats_cmd, repeats_opts.mutation);

    ScanOpts palindromes_opts;
    palindromes_opts.lengths = {2, 4, 6, 8, 10, 12};
    CLI::App* palindromes_cmd = app.add_subcommand(
        "palindromes", "Reverse-complement palindrome attrition under degradation");
    // Frees the short -h so the half-length option can be spelled --h.
    palindromes_cmd->set_help_flag("--help", "Print this help message and exit");
    palindromes_cmd->add_option("input", palindromes_opts.input, "Input FASTA")
        ->required();
    palindromes_cmd
        ->add_option("--h,--half", palindromes_opts.lengths,
                     "Comma-separated half-lengths")
        ->delimiter(',');
    palindromes_cmd
        ->add_option("--iters", palindromes_opts.iterations,
                     "Comma-separated iteration grid (0 added if missing)")
        ->delimiter(',');
    palindromes_cmd->add_option("--out", palindromes_opts.out,
                                "Output CSV (default stdout)");
    add_mutation_options(palindromes_cmd, palindromes_opts.mutation);

    TrajectoryOpts trajectory_opts;
    CLI::App* trajectory_cmd = app.add_subcommand(
        "trajectory", "Degradation trajectories and quadratic fits per genome");
    trajectory_cmd->add_option("input", trajectory_opts.input, "Input FASTA")->required();
    trajectory_cmd->add_option("out", trajectory_opts.out, "Trajectory CSV, - for stdout")
        ->required();
    trajectory_cmd
        ->add_option("--measures", trajectory_opts.measures,
                     "Comma-separated measures (triplet_entropy, entropy_N, "
                     "entropy_delta, hellinger_N, hamming, levenshtein)")
        ->delimiter(',');
    trajectory_cmd
        ->add_option("--origin", trajectory_opts.origin,
                     "Distance origin: parent, start, or reference")
        ->check(CLI::IsMember({"parent", "start", "reference"}));
    trajectory_cmd->add_option("--reference", trajectory_opts.reference_id,
                               "Genome id used when origin is reference");
    trajectory_cmd
        ->add_option("--checkpoints", trajectory_opts.checkpoints,
                     "Comma-separated measurement iterations (must start at 0)")
        ->delimiter(',');
    trajectory_cmd->add_option("--fits", trajectory_opts.fits_out,
                               "Also write quadratic fits to this CSV");
    trajectory_cmd
        ->add_option("--fit-target", trajectory_opts.fit_target,
                     "Trajectory the fit summarizes")
        ->check(CLI::IsMember({"entropy", "entropy_delta"}));
    add_mutation_options(trajectory_cmd, trajectory_opts.mutation);

    ClusterOpts cluster_opts;
    CLI::App* cluster_cmd =
        app.add_subcommand("cluster", "Hierarchical clustering of genome features");
    cluster_cmd->add_option("input", cluster_opts.input, "Fits CSV or FASTA (triplets)")
        ->required();
    cluster_cmd->add_option("out_dir", cluster_opts.out_dir, "Output directory")
        ->required();
    cluster_cmd
        ->add_option("--features", cluster_opts.features,
                     "Feature source: fits (CSV) or triplets (FASTA)")
        ->check(CLI::IsMember({"fits", "triplets"}));
    cluster_cmd->add_option("--linkage", cluster_opts.linkage, "complete or ward")
        ->check(CLI::IsMember({"complete", "ward", "ward.D"}));
    cluster_cmd->add_option("--k", cluster_opts.fixed_k, "Fixed cluster count");
    cluster_cmd->add_option("--k-range", cluster_opts.k_range,
                            "Selection range A..B for the Calinski-Harabasz index");

    CrosstabOpts crosstab_opts;
    CLI::App* crosstab_cmd = app.add_subcommand(
        "crosstab", "Cross-tabulate two assignment CSVs over the same genomes");
    crosstab_cmd->add_option("a", crosstab_opts.a, "First assignments CSV")->required();
    crosstab_cmd->add_option("b", crosstab_opts.b, "Second assignments CSV")->required();
    crosstab_cmd->add_option("--out", crosstab_opts.out, "Output CSV (default stdout)");

    PlantOpts plant_opts;
    CLI::App* plant_cmd = app.add_subcommand(
        "plant", "Plant degraded copies of randomly chosen genomes into a corpus");
    plant_cmd->add_option("input", plant_opts.input, "Input FASTA")->required();
    plant_cmd->add_option("output", plant_opts.output, "Output FASTA")->required();
    plant_cmd->add_option("--count", plant_opts.count, "Genomes to degrade and append");
    plant_cmd->add_option("--iters", plant_opts.iterations, "Degradation iterations");
    plant_cmd->add_option("--provenance", plant_opts.provenance_out,
                          "Provenance CSV (default stdout)");
    add_mutation_options(plant_cmd, plant_opts.mutation);

    PipelineOpts pipeline_opts;
    CLI::App* pipeline_cmd = app.add_subcommand(
        "pipeline", "Full corpus run: trajectories, fits, clustering, outlier report");
    pipeline_opts.cmd = pipeline_cmd;
    pipeline_cmd->add_option("corpus", pipeline_opts.corpus, "Corpus FASTA");
    pipeline_cmd->add_option("--out", pipeline_opts.out_dir, "Output directory");
    pipeline_cmd->add_option("--manifest", pipeline_opts.manifest,
                             "Re-run from a manifest.json; flags override");
    pipeline_cmd
        ->add_option("--checkpoints", pipeline_opts.checkpoints,
                     "Comma-separated measurement iterations (must start at 0)")
        ->delimiter(',');
    pipeline_cmd->add_option("--measures", pipeline_opts.measures, "Trajectory measures")
        ->delimiter(',');
    pipeline_cmd
        ->add_option("--origin", pipeline_opts.origin,
                     "Distance origin: parent, start, or reference")
        ->check(CLI::IsMember({"parent", "start", "reference"}));
    pipeline_cmd->add_option("--reference", pipeline_opts.reference_id,
                             "Genome id used when origin is reference");
    pipeline_cmd
        ->add_option("--fit-target", pipeline_opts.fit_target,
                     "Trajectory the clustered fit summarizes")
        ->check(CLI::IsMember({"entropy", "entropy_delta"}));
    pipeline_cmd->add_option("--linkage", pipeline_opts.linkage,
                             "Fit clustering linkage: complete or ward")
        ->check(CLI::IsMember({"complete", "ward", "ward.D"}));
    pipeline_cmd->add_option("--k", pipeline_opts.fixed_k, "Fixed cluster count");
    pipeline_cmd->add_option("--k-range", pipeline_opts.k_range,
                             "Selection range A..B for the Calinski-Harabasz index");
    pipeline_cmd->add_flag("--no-triplets", pipeline_opts.no_triplets,
                           "Skip triplet-feature clustering and the cross-tabulation");
    pipeline_cmd->add_option("--plant-count", pipeline_opts.plant_count,
                             "Outliers to plant before the run");
    pipeline_cmd->add_option("--plant-iters", pipeline_opts.plant_iters,
                             "Degradation iterations for planted outliers");
    pipeline_cmd->add_option("--threshold", pipeline_opts.threshold,
                             "Small-cluster outlier fraction");
    add_mutation_options(pipeline_cmd, pipeline_opts.mutation);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*degrade_cmd) run_degrade(degrade_opts, global);
        if (*metrics_cmd) run_metrics(metrics_opts, global);
        if (*repeats_cmd) run_scan(repeats_opts, global, StructureKind::Repeats);
        if (*palindromes_cmd) run_scan(palindromes_opts, global, StructureKind::Palindromes);
        if (*trajectory_cmd) run_trajectory_cmd(trajectory_opts, global);
        if (*cluster_cmd) run_cluster(cluster_opts, global);
        if (*crosstab_cmd) run_crosstab(crosstab_opts);
        if (*plant_cmd) run_plant(plant_opts, global);
        if (*pipeline_cmd) run_pipeline_cmd(pipeline_opts, global, app);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const BadK& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const BadRange& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
