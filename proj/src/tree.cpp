#include "ccx/tree.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ccx/errors.hpp"
#include "ccx/rng.hpp"

namespace ccx {

// --- TaxonMap ----------------------------------------------------------------

TaxonMap TaxonMap::parse_tsv(std::string_view text) {
    TaxonMap map;
    size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
        if (line.empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw ParseError("taxon map line " + std::to_string(line_no) + ": expected name<TAB>index");
        std::string_view name = line.substr(0, tab);
        std::string_view idx = line.substr(tab + 1);
        int value = 0;
        auto [p, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), value);
        if (ec != std::errc{} || p != idx.data() + idx.size() || value < 1)
            throw ParseError("taxon map line " + std::to_string(line_no) + ": bad index");
        map.add(std::string(name), value);
    }
    map.validate();
    return map;
}

TaxonMap TaxonMap::load_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open taxon map: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_tsv(ss.str());
}

void TaxonMap::add(const std::string& name, int index) {
    if (index > static_cast<int>(names_.size())) names_.resize(static_cast<size_t>(index));
    if (!names_[static_cast<size_t>(index) - 1].empty())
        throw ParseError("taxon map: duplicate index " + std::to_string(index));
    names_[static_cast<size_t>(index) - 1] = name;
    auto it = std::lower_bound(by_name_.begin(), by_name_.end(), name,
                               [](const auto& a, std::string_view b) { return a.first < b; });
    if (it != by_name_.end() && it->first == name)
        throw ParseError("taxon map: duplicate name " + name);
    by_name_.insert(it, {name, index});
}

std::optional<int> TaxonMap::index_of(std::string_view name) const {
    auto it = std::lower_bound(by_name_.begin(), by_name_.end(), name,
                               [](const auto& a, std::string_view b) { return a.first < b; });
    if (it == by_name_.end() || it->first != name) return std::nullopt;
    return it->second;
}

const std::string& TaxonMap::name_of(int index) const {
    if (index < 1 || index > static_cast<int>(names_.size()) ||
        names_[static_cast<size_t>(index) - 1].empty())
        throw std::out_of_range("taxon map: no name for index " + std::to_string(index));
    return names_[static_cast<size_t>(index) - 1];
}

void TaxonMap::validate() const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i].empty())
            throw ParseError("taxon map: missing index " + std::to_string(i + 1));
}

// --- Tree --------------------------------------------------------------------

int Tree::add_vertex(int label) {
    adj_.emplace_back();
    label_.push_back(static_cast<int32_t>(label));
    if (label > 0) ++leaf_count_;
    return static_cast<int>(adj_.size()) - 1;
}

void Tree::add_edge(int u, int v) {
    adj_[static_cast<size_t>(u)].push_back(static_cast<int32_t>(v));
    adj_[static_cast<size_t>(v)].push_back(static_cast<int32_t>(u));
}

int Tree::vertex_of_label(int label) const {
    for (int v = 0; v < vertex_count(); ++v)
        if (label_[static_cast<size_t>(v)] == label) return v;
    throw std::invalid_argument("tree: no leaf labeled " + std::to_string(label));
}

std::vector<int> Tree::leaf_labels() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(leaf_count_));
    for (int32_t l : label_)
        if (l > 0) out.push_back(l);
    std::sort(out.begin(), out.end());
    return out;
}

bool Tree::has_standard_labels() const {
    auto labels = leaf_labels();
    for (int i = 0; i < static_cast<int>(labels.size()); ++i)
        if (labels[static_cast<size_t>(i)] != i + 1) return false;
    return true;
}

void Tree::validate() const {
    const int V = vertex_count();
    if (V == 0) throw std::invalid_argument("tree: empty");
    const int n = leaf_count_;
    if (n == 1) {
        if (V != 1 || label_[0] <= 0) throw std::invalid_argument("tree: bad 1-leaf tree");
        return;
    }
    if (V != 2 * n - 2)
        throw std::invalid_argument("tree: wrong vertex count");
    size_t edge_halves = 0;
    for (int v = 0; v < V; ++v) {
        int deg = degree(v);
        edge_halves += static_cast<size_t>(deg);
        if (is_leaf(v)) {
            if (deg != 1) throw std::invalid_argument("tree: leaf with degree != 1");
        } else {
            if (n == 2 || deg != 3) throw std::invalid_argument("tree: internal vertex with degree != 3");
        }
    }
    if (edge_halves != 2 * (static_cast<size_t>(2 * n) - 3))
        throw std::invalid_argument("tree: wrong edge count");
    // connectivity (edge count + acyclicity follow from V-1 edges + connected)
    std::vector<char> seen(static_cast<size_t>(V), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int32_t w : adj_[static_cast<size_t>(v)])
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    if (count != V) throw std::invalid_argument("tree: not connected");
    std::vector<int> labels = leaf_labels();
    for (size_t i = 0; i + 1 < labels.size(); ++i)
        if (labels[i] == labels[i + 1])
            throw std::invalid_argument("tree: duplicate leaf label " + std::to_string(labels[i]));
}

// --- Newick parsing ----------------------------------------------------------

namespace {

struct NewickNode {
    std::string name;
    std::vector<int> children;
};

class NewickParser {
public:
    explicit NewickParser(std::string_view text) : text_(text) {}

    int parse_tree() { // returns root node id
        int root = parse_node();
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != ';')
            throw ParseError("newick: missing ';' terminator");
        ++pos_;
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("newick: trailing characters after ';'");
        return root;
    }

    std::vector<NewickNode> nodes;

private:
    std::string_view text_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    int parse_node() {
        skip_ws();
        int id = static_cast<int>(nodes.size());
        nodes.emplace_back();
        if (peek() == '(') {
            ++pos_;
            for (;;) {
                int child = parse_node();
                nodes[static_cast<size_t>(id)].children.push_back(child);
                char c = peek();
                if (c == ',') {
                    ++pos_;
                    continue;
                }
                if (c == ')') {
                    ++pos_;
                    break;
                }
                throw ParseError("newick: expected ',' or ')'");
            }
            // an internal node label would start here
            std::string label = read_name();
            if (!label.empty())
                throw ParseError("newick: internal node label '" + label + "' not allowed");
        } else {
            std::string name = read_name();
            if (name.empty()) throw ParseError("newick: expected leaf name");
            nodes[static_cast<size_t>(id)].name = std::move(name);
        }
        skip_branch_length();
        return id;
    }

    std::string read_name() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '(' || c == ')' || c == ',' || c == ':' || c == ';' ||
                std::isspace(static_cast<unsigned char>(c)))
                break;
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    void skip_branch_length() {
        if (peek() != ':') return;
        ++pos_;
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if ((c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+' || c == 'e' || c == 'E')
                ++pos_;
            else
                break;
        }
        if (pos_ == start) throw ParseError("newick: ':' without branch length");
    }
};

int resolve_leaf_label(const std::string& name, const TaxonMap* taxa) {
    if (taxa) {
        auto idx = taxa->index_of(name);
        if (!idx) throw ParseError("newick: unknown taxon '" + name + "'");
        return *idx;
    }
    int value = 0;
    auto [p, ec] = std::from_chars(name.data(), name.data() + name.size(), value);
    if (ec != std::errc{} || p != name.data() + name.size() || value < 1)
        throw ParseError("newick: leaf name '" + name + "' is not a positive integer "
                         "(supply a taxon map for named leaves)");
    return value;
}

} // namespace

Tree parse_newick(std::string_view text, const TaxonMap* taxa) {
    NewickParser parser(text);
    int root = parser.parse_tree();
    auto& nodes = parser.nodes;

    int n = 0;
    for (const auto& node : nodes)
        if (node.children.empty()) ++n;

    for (int id = 0; id < static_cast<int>(nodes.size()); ++id) {
        const auto& node = nodes[static_cast<size_t>(id)];
        if (node.children.empty()) continue;
        size_t c = node.children.size();
        if (id == root) {
            if (c != 2 && c != 3)
                throw ParseError("newick: root must have 2 or 3 children, found " +
                                 std::to_string(c));
            if (c == 3 && n < 3) throw ParseError("newick: trifurcation with fewer than 3 leaves");
        } else if (c != 2) {
            throw ParseError("newick: non-binary vertex (" + std::to_string(c) + " children)");
        }
    }

    Tree tree;
    std::vector<int> vertex_of(nodes.size(), -1);
    const bool suppress_root = !nodes[static_cast<size_t>(root)].children.empty() &&
                               nodes[static_cast<size_t>(root)].children.size() == 2;
    for (int id = 0; id < static_cast<int>(nodes.size()); ++id) {
        if (suppress_root && id == root) continue;
        const auto& node = nodes[static_cast<size_t>(id)];
        int label = node.children.empty() ? resolve_leaf_label(node.name, taxa) : 0;
        vertex_of[static_cast<size_t>(id)] = tree.add_vertex(label);
    }
    for (int id = 0; id < static_cast<int>(nodes.size()); ++id) {
        if (suppress_root && id == root) continue;
        for (int child : nodes[static_cast<size_t>(id)].children)
            tree.add_edge(vertex_of[static_cast<size_t>(id)], vertex_of[static_cast<size_t>(child)]);
    }
    if (suppress_root) {
        const auto& rc = nodes[static_cast<size_t>(root)].children;
        tree.add_edge(vertex_of[static_cast<size_t>(rc[0])], vertex_of[static_cast<size_t>(rc[1])]);
    }

    auto labels = tree.leaf_labels();
    for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
        if (labels[static_cast<size_t>(i)] != i + 1) {
            if (i > 0 && labels[static_cast<size_t>(i)] == labels[static_cast<size_t>(i) - 1])
                throw ParseError("newick: duplicate leaf label " +
                                 std::to_string(labels[static_cast<size_t>(i)]));
            throw ParseError("newick: leaf labels are not exactly 1.." +
                             std::to_string(labels.size()));
        }
    }
    try {
        tree.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("newick: ") + e.what());
    }
    return tree;
}

// --- Newick writing ----------------------------------------------------------

namespace {

std::string leaf_text(const Tree& t, int v, const TaxonMap* taxa) {
    int label = t.label_of(v);
    return taxa ? taxa->name_of(label) : std::to_string(label);
}

// Emits the subtree at v seen from `parent`; returns (text, min leaf label).
std::pair<std::string, int> write_subtree(const Tree& t, int v, int parent, const TaxonMap* taxa) {
    if (t.is_leaf(v)) return {leaf_text(t, v, taxa), t.label_of(v)};
    std::vector<std::pair<int, std::string>> parts;
    for (int32_t w : t.adjacency()[static_cast<size_t>(v)]) {
        if (w == parent) continue;
        auto [text, mn] = write_subtree(t, w, v, taxa);
        parts.emplace_back(mn, std::move(text));
    }
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string out = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ',';
        out += parts[i].second;
    }
    out += ')';
    return {std::move(out), parts.front().first};
}

} // namespace

std::string write_newick(const Tree& tree, const TaxonMap* taxa) {
    tree.validate();
    const int n = tree.leaf_count();
    if (n == 1) return leaf_text(tree, 0, taxa) + ";";
    int min_label = tree.leaf_labels().front();
    int start_leaf = tree.vertex_of_label(min_label);
    if (n == 2) {
        int other = tree.adjacency()[static_cast<size_t>(start_leaf)].front();
        return "(" + leaf_text(tree, start_leaf, taxa) + "," + leaf_text(tree, other, taxa) + ");";
    }
    // Root at the internal vertex next to the smallest leaf: canonical and
    // always a trifurcation.
    int root = tree.adjacency()[static_cast<size_t>(start_leaf)].front();
    return write_subtree(tree, root, -1, taxa).first + ";";
}

std::vector<Tree> read_newick_file(const std::string& path, const TaxonMap* taxa) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open tree file: " + path);
    std::vector<Tree> trees;
    std::string line;
    while (std::getline(in, line)) {
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        trees.push_back(parse_newick(line, taxa));
    }
    return trees;
}

// --- Restriction ---------------------------------------------------------------

Tree restrict_to(const Tree& tree, std::span<const int> labels) {
    if (labels.empty()) throw std::invalid_argument("restrict: empty label set");
    std::vector<int> want(labels.begin(), labels.end());
    std::sort(want.begin(), want.end());
    for (size_t i = 0; i + 1 < want.size(); ++i)
        if (want[i] == want[i + 1])
            throw std::invalid_argument("restrict: duplicate label " + std::to_string(want[i]));

    if (want.size() == 1) {
        tree.vertex_of_label(want[0]); // existence check
        Tree out;
        out.add_vertex(want[0]);
        return out;
    }

    const int V = tree.vertex_count();
    // Parent pointers from a DFS rooted at one wanted leaf.
    int root = tree.vertex_of_label(want[0]);
    std::vector<int> parent(static_cast<size_t>(V), -2);
    std::vector<int> stack{root};
    parent[static_cast<size_t>(root)] = -1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int32_t w : tree.adjacency()[static_cast<size_t>(v)])
            if (parent[static_cast<size_t>(w)] == -2) {
                parent[static_cast<size_t>(w)] = v;
                stack.push_back(w);
            }
    }

    // Union of leaf-to-root paths = minimal subtree spanning the wanted leaves.
    std::vector<char> keep(static_cast<size_t>(V), 0);
    keep[static_cast<size_t>(root)] = 1;
    for (int lbl : want) {
        int v = tree.vertex_of_label(lbl);
        while (v != -1 && !keep[static_cast<size_t>(v)]) {
            keep[static_cast<size_t>(v)] = 1;
            v = parent[static_cast<size_t>(v)];
        }
    }

    // Induced adjacency, then suppress degree-2 vertices.
    std::vector<std::vector<int>> adj(static_cast<size_t>(V));
    for (int v = 0; v < V; ++v) {
        if (!keep[static_cast<size_t>(v)]) continue;
        int p = parent[static_cast<size_t>(v)];
        if (p >= 0 && keep[static_cast<size_t>(p)]) {
            adj[static_cast<size_t>(v)].push_back(p);
            adj[static_cast<size_t>(p)].push_back(v);
        }
    }
    std::vector<char> alive = keep;
    for (int v = 0; v < V; ++v) {
        if (!alive[static_cast<size_t>(v)] || tree.is_leaf(v)) continue;
        if (adj[static_cast<size_t>(v)].size() == 2) {
            int a = adj[static_cast<size_t>(v)][0];
            int b = adj[static_cast<size_t>(v)][1];
            auto splice = [&](int x, int from, int to) {
                for (auto& w : adj[static_cast<size_t>(x)])
                    if (w == from) w = to;
            };
            splice(a, v, b);
            splice(b, v, a);
            alive[static_cast<size_t>(v)] = 0;
        }
    }

    Tree out;
    std::vector<int> new_id(static_cast<size_t>(V), -1);
    for (int v = 0; v < V; ++v)
        if (alive[static_cast<size_t>(v)])
            new_id[static_cast<size_t>(v)] = out.add_vertex(tree.is_leaf(v) ? tree.label_of(v) : 0);
    for (int v = 0; v < V; ++v) {
        if (!alive[static_cast<size_t>(v)]) continue;
        for (int w : adj[static_cast<size_t>(v)])
            if (v < w)
                out.add_edge(new_id[static_cast<size_t>(v)], new_id[static_cast<size_t>(w)]);
    }
    out.validate();
    return out;
}

// --- Random trees ---------------------------------------------------------------

Tree random_tree(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_tree: n must be >= 1");
    if (n == 1) {
        Tree out;
        out.add_vertex(1);
        return out;
    }
    SplitMix64 rng(seed, /*stream=*/2); // stream 1 is permutation sampling
    // Edge list over provisional vertex ids: leaves are 1..n, internals n+1,...
    struct E {
        int u, v;
    };
    std::vector<E> edges{{1, 2}};
    int next_internal = n + 1;
    for (int leaf = 3; leaf <= n; ++leaf) {
        size_t pick = static_cast<size_t>(rng.below(edges.size()));
        E old = edges[pick];
        int mid = next_internal++;
        edges[pick] = {old.u, mid};
        edges.push_back({mid, old.v});
        edges.push_back({mid, leaf});
    }
    Tree out;
    std::vector<int> vid(static_cast<size_t>(next_internal), -1);
    for (int lbl = 1; lbl <= n; ++lbl) vid[static_cast<size_t>(lbl) - 1] = out.add_vertex(lbl);
    for (int v = n + 1; v < next_internal; ++v) vid[static_cast<size_t>(v) - 1] = out.add_vertex(0);
    for (const E& e : edges)
        out.add_edge(vid[static_cast<size_t>(e.u) - 1], vid[static_cast<size_t>(e.v) - 1]);
    out.validate();
    return out;
}

Tree relabel(const Tree& tree, std::span<const int> mapping) {
    Tree out;
    for (int v = 0; v < tree.vertex_count(); ++v) {
        int lbl = tree.label_of(v);
        if (lbl > 0) {
            if (lbl >= static_cast<int>(mapping.size()))
                throw std::invalid_argument("relabel: mapping too short");
            lbl = mapping[static_cast<size_t>(lbl)];
        }
        out.add_vertex(lbl);
    }
    for (int v = 0; v < tree.vertex_count(); ++v)
        for (int32_t w : tree.adjacency()[static_cast<size_t>(v)])
            if (w > v) out.add_edge(v, static_cast<int>(w));
    out.validate();
    return out;
}

// --- Splits and isomorphism ------------------------------------------------------

std::set<std::vector<int>> nontrivial_splits(const Tree& tree) {
    std::set<std::vector<int>> out;
    const int V = tree.vertex_count();
    int global_min = tree.leaf_count() >= 1 ? tree.leaf_labels().front() : 0;
    for (int u = 0; u < V; ++u) {
        for (int32_t v : tree.adjacency()[static_cast<size_t>(u)]) {
            if (v < u) continue;
            if (tree.is_leaf(u) || tree.is_leaf(static_cast<int>(v))) continue;
            // labels on u's side of edge (u,v)
            std::vector<int> side;
            std::vector<int> stack{u};
            std::vector<char> seen(static_cast<size_t>(V), 0);
            seen[static_cast<size_t>(u)] = 1;
            seen[static_cast<size_t>(v)] = 1;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                if (tree.is_leaf(x)) side.push_back(tree.label_of(x));
                for (int32_t w : tree.adjacency()[static_cast<size_t>(x)])
                    if (!seen[static_cast<size_t>(w)]) {
                        seen[static_cast<size_t>(w)] = 1;
                        stack.push_back(w);
                    }
            }
            std::sort(side.begin(), side.end());
            if (static_cast<int>(side.size()) < 2 ||
                static_cast<int>(side.size()) > tree.leaf_count() - 2)
                continue;
            if (!side.empty() && side.front() == global_min) {
                // canonical side: the one without the smallest label
                std::vector<int> other;
                auto all = tree.leaf_labels();
                std::set_difference(all.begin(), all.end(), side.begin(), side.end(),
                                    std::back_inserter(other));
                out.insert(std::move(other));
            } else {
                out.insert(std::move(side));
            }
        }
    }
    return out;
}

bool trees_isomorphic(const Tree& a, const Tree& b) {
    if (a.leaf_labels() != b.leaf_labels()) return false;
    return nontrivial_splits(a) == nontrivial_splits(b);
}

} // namespace ccx
