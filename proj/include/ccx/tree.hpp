#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccx {

// Optional mapping between external taxon names and leaf labels 1..n.
class TaxonMap {
public:
    TaxonMap() = default;
    // Two-column TSV: name <TAB> index. Indices must be exactly 1..n.
    static TaxonMap parse_tsv(std::string_view text);
    static TaxonMap load_tsv(const std::string& path);

    void add(const std::string& name, int index);
    std::optional<int> index_of(std::string_view name) const;
    const std::string& name_of(int index) const;
    int size() const { return static_cast<int>(names_.size()); }
    void validate() const; // bijection onto 1..n

private:
    std::vector<std::string> names_; // position i holds the name of label i+1
    std::vector<std::pair<std::string, int>> by_name_; // sorted for lookup
};

// An unrooted binary tree: every vertex has degree 1 or 3 (n >= 3), leaves
// carry distinct positive labels. Freshly built trees are labeled 1..n;
// restrictions keep the labels of the chosen subset.
class Tree {
public:
    Tree() = default;

    int leaf_count() const { return leaf_count_; }
    int vertex_count() const { return static_cast<int>(adj_.size()); }
    const std::vector<std::vector<int32_t>>& adjacency() const { return adj_; }
    bool is_leaf(int v) const { return label_[static_cast<size_t>(v)] > 0; }
    // 0 for internal vertices.
    int label_of(int v) const { return label_[static_cast<size_t>(v)]; }
    int vertex_of_label(int label) const;
    std::vector<int> leaf_labels() const; // ascending
    bool has_standard_labels() const;     // labels are exactly 1..n
    int degree(int v) const { return static_cast<int>(adj_[static_cast<size_t>(v)].size()); }

    // Throws std::invalid_argument when any structural invariant fails:
    // connectivity, acyclicity, degrees in {1,3}, distinct positive labels.
    void validate() const;

    // Builder interface used by constructors in this module.
    int add_vertex(int label = 0);
    void add_edge(int u, int v);

private:
    int leaf_count_ = 0;
    std::vector<std::vector<int32_t>> adj_;
    std::vector<int32_t> label_;
};

// --- Newick I/O ------------------------------------------------------------
//
// Dialect: leaf names are integers 1..n unless a TaxonMap is supplied; branch
// lengths are accepted and discarded; internal node labels are rejected; a
// degree-2 root is suppressed on load. Output always uses a trifurcating root
// (for n >= 3) with children ordered by the smallest leaf label in their
// subtree, which makes the text a canonical form of the tree.

Tree parse_newick(std::string_view text, const TaxonMap* taxa = nullptr);
std::string write_newick(const Tree& tree, const TaxonMap* taxa = nullptr);

// One tree per line; blank lines skipped.
std::vector<Tree> read_newick_file(const std::string& path, const TaxonMap* taxa = nullptr);

// --- Constructions and queries ----------------------------------------------

// Minimal subtree spanning the given leaf labels, degree-2 vertices suppressed.
// Result keeps the labels of `labels`.
Tree restrict_to(const Tree& tree, std::span<const int> labels);

// Uniform over the (2n-5)!! labeled topologies, by inserting leaf i at an edge
// chosen uniformly with SplitMix64(seed).
Tree random_tree(int n, std::uint64_t seed);

// mapping[old_label] = new_label (1-based, index 0 unused).
Tree relabel(const Tree& tree, std::span<const int> mapping);

// Nontrivial splits (both sides >= 2), each encoded as the sorted side that
// does not contain the smallest leaf label.
std::set<std::vector<int>> nontrivial_splits(const Tree& tree);

// Label-preserving isomorphism. Requires equal leaf-label sets.
bool trees_isomorphic(const Tree& a, const Tree& b);

} // namespace ccx
