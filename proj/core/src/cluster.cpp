#include "degradex/cluster.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "degradex/csv.hpp"
#include "degradex/errors.hpp"

namespace degradex {

std::string_view to_string(Linkage linkage) {
    return linkage == Linkage::Complete ? "complete" : "ward";
}

Linkage linkage_from_string(const std::string& name) {
    if (name == "complete") return Linkage::Complete;
    if (name == "ward" || name == "ward.D") return Linkage::Ward;
    throw ConfigError("unknown linkage: " + name);
}

FeatureMatrix standardize(const FeatureMatrix& matrix) {
    const std::size_t n = matrix.rows();
    const std::size_t p = matrix.cols();
    if (n < 2) {
        throw TooFewRows("standardize needs at least 2 rows");
    }
    FeatureMatrix out = matrix;
    out.standardized = true;
    out.constant_cols.assign(p, false);
    for (std::size_t c = 0; c < p; ++c) {
        double lo = matrix.at(0, c), hi = matrix.at(0, c), sum = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double v = matrix.at(r, c);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        if (lo == hi) {
            out.constant_cols[c] = true;
            for (std::size_t r = 0; r < n; ++r) out.at(r, c) = 0.0;
            continue;
        }
        const double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double d = matrix.at(r, c) - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        for (std::size_t r = 0; r < n; ++r) {
            out.at(r, c) = (matrix.at(r, c) - mean) / sd;
        }
    }
    return out;
}

std::vector<double> euclidean_distances(const FeatureMatrix& matrix) {
    const std::size_t n = matrix.rows();
    const std::size_t p = matrix.cols();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double ss = 0.0;
            for (std::size_t c = 0; c < p; ++c) {
                const double diff = matrix.at(i, c) - matrix.at(j, c);
                ss += diff * diff;
            }
            d[i * n + j] = d[j * n + i] = std::sqrt(ss);
        }
    }
    return d;
}

ClusterTree hclust(const FeatureMatrix& matrix, Linkage linkage) {
    const std::size_t n = matrix.rows();
    if (n < 2) {
        throw TooFewRows("hclust needs at least 2 rows");
    }

    // Slot s holds an active cluster; dist is row-major over slots.
    std::vector<double> dist = euclidean_distances(matrix);
    std::vector<std::size_t> id(n), size(n, 1);
    std::vector<bool> active(n, true);
    for (std::size_t i = 0; i < n; ++i) id[i] = i;

    ClusterTree tree;
    tree.linkage = linkage;
    tree.n_leaves = n;
    tree.merges.reserve(n - 1);

    for (std::size_t step = 0; step + 1 < n; ++step) {
        // Global minimum with the (older id, younger id) tie-break.
        std::size_t best_i = 0, best_j = 0;
        double best_d = std::numeric_limits<double>::infinity();
        std::size_t best_lo = 0, best_hi = 0;
        bool found = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j]) continue;
                const double d = dist[i * n + j];
                const std::size_t lo = std::min(id[i], id[j]);
                const std::size_t hi = std::max(id[i], id[j]);
                if (!found || d < best_d ||
                    (d == best_d && (lo < best_lo || (lo == best_lo && hi < best_hi)))) {
                    found = true;
                    best_d = d;
                    best_i = i;
                    best_j = j;
                    best_lo = lo;
                    best_hi = hi;
                }
            }
        }

        tree.merges.push_back({best_lo, best_hi, best_d});
        const std::size_t ni = size[best_i];
        const std::size_t nj = size[best_j];
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == best_i || k == best_j) continue;
            const double dik = dist[std::min(best_i, k) * n + std::max(best_i, k)];
            const double djk = dist[std::min(best_j, k) * n + std::max(best_j, k)];
            double dnew;
            if (linkage == Linkage::Complete) {
                dnew = std::max(dik, djk);
            } else {
                const double t = static_cast<double>(ni + nj + size[k]);
                const double ai = static_cast<double>(ni + size[k]) / t;
                const double aj = static_cast<double>(nj + size[k]) / t;
                const double beta = -static_cast<double>(size[k]) / t;
                dnew = ai * dik + aj * djk + beta * best_d;
            }
            dist[best_i * n + k] = dist[k * n + best_i] = dnew;
        }
        id[best_i] = n + step;
        size[best_i] = ni + nj;
        active[best_j] = false;
    }

    // Display order: depth-first, left subtree before right.
    tree.leaf_order.reserve(n);
    std::vector<std::size_t> stack{2 * n - 2};
    while (!stack.empty()) {
        const std::size_t node = stack.back();
        stack.pop_back();
        if (node < n) {
            tree.leaf_order.push_back(node);
        } else {
            const ClusterTree::Merge& m = tree.merges[node - n];
            stack.push_back(m.right);
            stack.push_back(m.left);
        }
    }
    return tree;
}

ClusterModel cut_tree(const ClusterTree& tree, std::size_t k) {
    const std::size_t n = tree.n_leaves;
    if (k < 1 || k > n) {
        throw BadK("k must lie in [1, " + std::to_string(n) + "], got " + std::to_string(k));
    }

    std::vector<std::size_t> parent(2 * n - 1);
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    for (std::size_t step = 0; step < n - k; ++step) {
        parent[tree.merges[step].left] = n + step;
        parent[tree.merges[step].right] = n + step;
    }
    auto root_of = [&](std::size_t node) {
        while (parent[node] != node) node = parent[node];
        return node;
    };

    ClusterModel model;
    model.k = k;
    model.assignments.assign(n, 0);
    std::unordered_map<std::size_t, int> label_of_root;
    label_of_root.reserve(k);
    for (const std::size_t leaf : tree.leaf_order) {
        const std::size_t root = root_of(leaf);
        auto [it, inserted] =
            label_of_root.emplace(root, static_cast<int>(label_of_root.size()) + 1);
        model.assignments[leaf] = it->second;
    }
    model.sizes.assign(k, 0);
    for (const int label : model.assignments) {
        ++model.sizes[static_cast<std::size_t>(label) - 1];
    }
    return model;
}

namespace {

// (between SS / (k-1)) / (within SS / (n-k)), pooled over features.
double calinski_harabasz(const FeatureMatrix& matrix, const ClusterModel& model) {
    const std::size_t n = matrix.rows();
    const std::size_t p = matrix.cols();
    const std::size_t k = model.k;

    std::vector<double> grand(p, 0.0), mean(k * p, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t label = static_cast<std::size_t>(model.assignments[r]) - 1;
        for (std::size_t c = 0; c < p; ++c) {
            grand[c] += matrix.at(r, c);
            mean[label * p + c] += matrix.at(r, c);
        }
    }
    for (std::size_t c = 0; c < p; ++c) grand[c] /= static_cast<double>(n);
    for (std::size_t g = 0; g < k; ++g) {
        for (std::size_t c = 0; c < p; ++c) {
            mean[g * p + c] /= static_cast<double>(model.sizes[g]);
        }
    }

    double within = 0.0, between = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t label = static_cast<std::size_t>(model.assignments[r]) - 1;
        for (std::size_t c = 0; c < p; ++c) {
            const double dw = matrix.at(r, c) - mean[label * p + c];
            within += dw * dw;
        }
    }
    for (std::size_t g = 0; g < k; ++g) {
        for (std::size_t c = 0; c < p; ++c) {
            const double db = mean[g * p + c] - grand[c];
            between += static_cast<double>(model.sizes[g]) * db * db;
        }
    }

    const double num = between / static_cast<double>(k - 1);
    if (within == 0.0) return std::numeric_limits<double>::infinity();
    return num / (within / static_cast<double>(n - k));
}

}  // namespace

SelectKResult select_k(const ClusterTree& tree, const FeatureMatrix& matrix,
                       std::size_t k_min, std::size_t k_max) {
    const std::size_t n = matrix.rows();
    if (k_min < 2 || k_max < k_min || k_max > n - 1) {
        throw BadRange("k range must lie within [2, n-1]");
    }

    double total_ss = 0.0;
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < n; ++r) mean += matrix.at(r, c);
        mean /= static_cast<double>(n);
        for (std::size_t r = 0; r < n; ++r) {
            const double d = matrix.at(r, c) - mean;
            total_ss += d * d;
        }
    }
    if (total_ss == 0.0) {
        throw DegenerateData("all rows identical; no cluster count is meaningful");
    }

    SelectKResult result;
    double best = -1.0;
    for (std::size_t k = k_min; k <= k_max; ++k) {
        const double ch = calinski_harabasz(matrix, cut_tree(tree, k));
        result.table.emplace_back(k, ch);
        if (ch > best) {
            best = ch;
            result.k = k;
        }
    }
    return result;
}

FeatureMatrix centroids(const FeatureMatrix& matrix, const ClusterModel& model) {
    const std::size_t n = matrix.rows();
    const std::size_t p = matrix.cols();
    FeatureMatrix out;
    out.col_names = matrix.col_names;
    out.standardized = matrix.standardized;
    out.row_ids.reserve(model.k);
    for (std::size_t g = 1; g <= model.k; ++g) {
        out.row_ids.push_back(std::to_string(g));
    }
    out.values.assign(model.k * p, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t label = static_cast<std::size_t>(model.assignments[r]) - 1;
        for (std::size_t c = 0; c < p; ++c) {
            out.at(label, c) += matrix.at(r, c);
        }
    }
    for (std::size_t g = 0; g < model.k; ++g) {
        for (std::size_t c = 0; c < p; ++c) {
            out.at(g, c) /= static_cast<double>(model.sizes[g]);
        }
    }
    return out;
}

Embedding2D classical_mds(const std::vector<double>& distances, std::size_t n) {
    if (n < 3) {
        throw TooFewRows("classical MDS needs at least 3 points");
    }
    if (distances.size() != n * n) {
        throw AsymmetricInput("distance matrix size does not match point count");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(distances[i * n + i]) > 1e-9) {
            throw AsymmetricInput("distance matrix diagonal must be zero");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = distances[i * n + j];
            const double b = distances[j * n + i];
            if (std::fabs(a - b) > 1e-9 * std::max(1.0, std::fabs(a))) {
                throw AsymmetricInput("distance matrix must be symmetric");
            }
        }
    }

    Eigen::MatrixXd sq(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = distances[i * n + j];
            sq(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d * d;
        }
    }
    const Eigen::MatrixXd centerer =
        Eigen::MatrixXd::Identity(n, n) -
        Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
    const Eigen::MatrixXd b = -0.5 * centerer * sq * centerer;
    // b drifts from exact symmetry by rounding; the solver wants symmetry.
    const Eigen::MatrixXd bsym = 0.5 * (b + b.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(bsym);
    if (solver.info() != Eigen::Success) {
        throw Error("eigendecomposition failed in classical MDS");
    }

    Embedding2D em;
    em.x.assign(n, 0.0);
    em.y.assign(n, 0.0);
    const Eigen::Index last = static_cast<Eigen::Index>(n) - 1;
    em.eigenvalue_x = std::max(0.0, solver.eigenvalues()(last));
    em.eigenvalue_y = std::max(0.0, solver.eigenvalues()(last - 1));
    const double sx = std::sqrt(em.eigenvalue_x);
    const double sy = std::sqrt(em.eigenvalue_y);
    for (std::size_t i = 0; i < n; ++i) {
        em.x[i] = solver.eigenvectors()(static_cast<Eigen::Index>(i), last) * sx;
        em.y[i] = solver.eigenvectors()(static_cast<Eigen::Index>(i), last - 1) * sy;
    }
    auto orient = [n](std::vector<double>& axis) {
        for (std::size_t i = 0; i < n; ++i) {
            if (std::fabs(axis[i]) > 1e-12) {
                if (axis[i] < 0.0) {
                    for (std::size_t j = 0; j < n; ++j) axis[j] = -axis[j];
                }
                return;
            }
        }
    };
    orient(em.x);
    orient(em.y);
    return em;
}

std::vector<double> variance_explained(const FeatureMatrix& matrix,
                                       const ClusterModel& model) {
    const std::size_t n = matrix.rows();
    const std::size_t p = matrix.cols();
    std::vector<double> mean(model.k * p, 0.0), grand(p, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t label = static_cast<std::size_t>(model.assignments[r]) - 1;
        for (std::size_t c = 0; c < p; ++c) {
            mean[label * p + c] += matrix.at(r, c);
            grand[c] += matrix.at(r, c);
        }
    }
    for (std::size_t g = 0; g < model.k; ++g) {
        for (std::size_t c = 0; c < p; ++c) {
            mean[g * p + c] /= static_cast<double>(model.sizes[g]);
        }
    }
    for (std::size_t c = 0; c < p; ++c) grand[c] /= static_cast<double>(n);

    std::vector<double> within(p, 0.0), total(p, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t label = static_cast<std::size_t>(model.assignments[r]) - 1;
        for (std::size_t c = 0; c < p; ++c) {
            const double dw = matrix.at(r, c) - mean[label * p + c];
            within[c] += dw * dw;
            const double dt = matrix.at(r, c) - grand[c];
            total[c] += dt * dt;
        }
    }

    double total_all = 0.0;
    for (const double t : total) total_all += t;
    if (total_all == 0.0) {
        throw DegenerateData("total sum of squares is zero");
    }

    std::vector<double> fractions(p, 1.0);
    for (std::size_t c = 0; c < p; ++c) {
        if (total[c] > 0.0) {
            fractions[c] = std::clamp(1.0 - within[c] / total[c], 0.0, 1.0);
        }
    }
    return fractions;
}

CrossTab cross_tabulate(const std::vector<std::string>& ids_a,
                        const std::vector<int>& labels_a,
                        const std::vector<std::string>& ids_b,
                        const std::vector<int>& labels_b) {
    if (ids_a.size() != labels_a.size() || ids_b.size() != labels_b.size()) {
        throw IdMismatch("id and label lists must have matching lengths");
    }
    if (ids_a.size() != ids_b.size()) {
        throw IdMismatch("the two labelings cover different numbers of genomes");
    }
    std::unordered_map<std::string, int> b_of;
    b_of.reserve(ids_b.size());
    for (std::size_t i = 0; i < ids_b.size(); ++i) {
        if (!b_of.emplace(ids_b[i], labels_b[i]).second) {
            throw IdMismatch("duplicate id in second labeling: " + ids_b[i]);
        }
    }

    CrossTab tab;
    for (const int label : labels_a) {
        tab.ka = std::max(tab.ka, static_cast<std::size_t>(label));
    }
    for (const int label : labels_b) {
        tab.kb = std::max(tab.kb, static_cast<std::size_t>(label));
    }
    tab.counts.assign(tab.ka * tab.kb, 0);
    std::unordered_set<std::string> seen;
    seen.reserve(ids_a.size());
    for (std::size_t i = 0; i < ids_a.size(); ++i) {
        if (!seen.insert(ids_a[i]).second) {
            throw IdMismatch("duplicate id in first labeling: " + ids_a[i]);
        }
        const auto it = b_of.find(ids_a[i]);
        if (it == b_of.end()) {
            throw IdMismatch("id missing from second labeling: " + ids_a[i]);
        }
        ++tab.counts[(static_cast<std::size_t>(labels_a[i]) - 1) * tab.kb +
                     (static_cast<std::size_t>(it->second) - 1)];
    }
    tab.row_sums.assign(tab.ka, 0);
    tab.col_sums.assign(tab.kb, 0);
    for (std::size_t a = 0; a < tab.ka; ++a) {
        for (std::size_t b = 0; b < tab.kb; ++b) {
            tab.row_sums[a] += tab.at(a, b);
            tab.col_sums[b] += tab.at(a, b);
            tab.total += tab.at(a, b);
        }
    }
    return tab;
}

namespace {

void newick_node(const ClusterTree& tree, const std::vector<std::string>& names,
                 std::size_t node, double parent_height, std::string& out) {
    if (node < tree.n_leaves) {
        out += names[node];
        out += ':';
        out += format_double(parent_height);
        return;
    }
    const ClusterTree::Merge& m = tree.merges[node - tree.n_leaves];
    out += '(';
    newick_node(tree, names, m.left, m.height, out);
    out += ',';
    newick_node(tree, names, m.right, m.height, out);
    out += ')';
    out += ':';
    out += format_double(std::max(0.0, parent_height - m.height));
}

}  // namespace

std::string dendrogram_newick(const ClusterTree& tree,
                              const std::vector<std::string>& leaf_names) {
    if (leaf_names.size() != tree.n_leaves) {
        throw ConfigError("leaf name count does not match tree");
    }
    std::string out;
    const ClusterTree::Merge& m = tree.merges.back();
    out += '(';
    newick_node(tree, leaf_names, m.left, m.height, out);
    out += ',';
    newick_node(tree, leaf_names, m.right, m.height, out);
    out += ");";
    return out;
}

}  // namespace degradex
