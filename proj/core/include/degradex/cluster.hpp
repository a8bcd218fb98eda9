#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace degradex {

struct FeatureMatrix {
    std::vector<std::string> row_ids;
    std::vector<std::string> col_names;
    std::vector<double> values;  // row-major rows() x cols()
    bool standardized = false;
    std::vector<bool> constant_cols;  // flagged by standardize

    std::size_t rows() const { return row_ids.size(); }
    std::size_t cols() const { return col_names.size(); }
    double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
    double& at(std::size_t r, std::size_t c) { return values[r * cols() + c]; }
};

// Column-wise z-scores with sample (n-1) standard deviation; constant
// columns are set to 0 and flagged. Throws TooFewRows when rows < 2.
FeatureMatrix standardize(const FeatureMatrix& matrix);

enum class Linkage { Complete, Ward };

std::string_view to_string(Linkage linkage);
Linkage linkage_from_string(const std::string& name);

// Agglomerative merge tree. Nodes 0..n-1 are leaves; merge i creates
// node n+i. In every merge the left node is the older (smaller) id.
struct ClusterTree {
    struct Merge {
        std::size_t left = 0;
        std::size_t right = 0;
        double height = 0.0;
    };
    Linkage linkage = Linkage::Complete;
    std::size_t n_leaves = 0;
    std::vector<Merge> merges;            // n-1 entries
    std::vector<std::size_t> leaf_order;  // display order, left subtree first
};

// Lance-Williams agglomeration on Euclidean row distances. Complete
// linkage takes the pairwise maximum; Ward applies the classic ward.D
// coefficients to the unsquared input distances. Ties break on the
// lexicographically smallest (older id, younger id) pair, so results
// are platform-identical. Throws TooFewRows when rows < 2.
ClusterTree hclust(const FeatureMatrix& matrix, Linkage linkage);

struct ClusterModel {
    std::size_t k = 0;
    std::vector<int> assignments;     // per row, labels 1..k
    std::vector<std::size_t> sizes;   // per label, sizes[label-1]
};

// Cuts after n-k merges; labels are assigned 1..k by order of first
// appearance in the dendrogram leaf order. Throws BadK outside [1, n].
ClusterModel cut_tree(const ClusterTree& tree, std::size_t k);

struct SelectKResult {
    std::size_t k = 0;
    std::vector<std::pair<std::size_t, double>> table;  // (k, Calinski-Harabasz)
};

// Maximizes the Calinski-Harabasz index over [k_min, k_max]; the full
// index table is returned so callers can override. Throws BadRange
// outside [2, n-1] and DegenerateData when all rows are identical.
SelectKResult select_k(const ClusterTree& tree, const FeatureMatrix& matrix,
                       std::size_t k_min, std::size_t k_max);

// Per-cluster arithmetic means; rows ordered by label, row ids are the
// cluster labels.
FeatureMatrix centroids(const FeatureMatrix& matrix, const ClusterModel& model);

struct Embedding2D {
    std::vector<double> x, y;
    double eigenvalue_x = 0.0, eigenvalue_y = 0.0;
};

// Classical (Torgerson) scaling: double-center -D^2/2, take the top two
// eigenpairs (eigenvalues clamped at 0), coordinates are eigenvector
// times sqrt(eigenvalue). Each axis is flipped so its first nonzero
// coordinate is positive. `distances` is n x n row-major. Throws
// AsymmetricInput on asymmetry or a nonzero diagonal, TooFewRows for
// n < 3.
Embedding2D classical_mds(const std::vector<double>& distances, std::size_t n);

// Per-feature 1 - within-cluster SS / total SS. A feature with zero
// total SS reports 1.0; all-zero total SS throws DegenerateData.
std::vector<double> variance_explained(const FeatureMatrix& matrix,
                                       const ClusterModel& model);

struct CrossTab {
    std::size_t ka = 0, kb = 0;
    std::vector<std::uint64_t> counts;  // row-major ka x kb
    std::vector<std::uint64_t> row_sums, col_sums;
    std::uint64_t total = 0;

    std::uint64_t at(std::size_t a, std::size_t b) const { return counts[a * kb + b]; }
};

// Contingency table of two labelings of the same id set, with margins.
// Throws IdMismatch when the id sets differ.
CrossTab cross_tabulate(const std::vector<std::string>& ids_a,
                        const std::vector<int>& labels_a,
                        const std::vector<std::string>& ids_b,
                        const std::vector<int>& labels_b);

// Parenthesized dendrogram text with merge heights as branch lengths.
std::string dendrogram_newick(const ClusterTree& tree,
                              const std::vector<std::string>& leaf_names);

// Euclidean distance matrix of the rows, n x n row-major.
std::vector<double> euclidean_distances(const FeatureMatrix& matrix);

}  // namespace degradex
