#include "ccx/convexity.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "ccx/errors.hpp"

namespace ccx {

// --- CountTable ----------------------------------------------------------------

CountTable CountTable::from_cells(int n, std::map<std::pair<int, int>, Count> cells) {
    CountTable t;
    t.n = n;
    t.by_k.assign(static_cast<size_t>(n) + 1, 0);
    t.by_k_nontrivial.assign(static_cast<size_t>(n) + 1, 0);
    for (const auto& [key, count] : cells) {
        auto [k, ell] = key;
        t.by_k[static_cast<size_t>(k)] += count;
        if (ell <= k - 2) t.by_k_nontrivial[static_cast<size_t>(k)] += count;
        t.total += count;
    }
    t.by_k_ell = std::move(cells);
    return t;
}

void CountTable::write_csv(std::ostream& out) const {
    out << "# schema=ccx.count.v1\n";
    out << "n,k,ell,nontrivial,count\n";
    for (const auto& [key, count] : by_k_ell) {
        auto [k, ell] = key;
        out << n << ',' << k << ',' << ell << ',' << (ell <= k - 2 ? 1 : 0) << ',' << count
            << '\n';
    }
}

std::string CountTable::to_json() const {
    nlohmann::json j;
    j["schema"] = "ccx.count.v1";
    j["n"] = n;
    j["total"] = total.str();
    auto& bk = j["by_k"] = nlohmann::json::array();
    auto& bn = j["by_k_nontrivial"] = nlohmann::json::array();
    for (int k = 0; k <= n; ++k) {
        if (by_k[static_cast<size_t>(k)] != 0)
            bk.push_back({{"k", k}, {"count", by_k[static_cast<size_t>(k)].str()}});
        if (by_k_nontrivial[static_cast<size_t>(k)] != 0)
            bn.push_back({{"k", k}, {"count", by_k_nontrivial[static_cast<size_t>(k)].str()}});
    }
    auto& cells = j["cells"] = nlohmann::json::array();
    for (const auto& [key, count] : by_k_ell)
        cells.push_back({{"k", key.first}, {"ell", key.second}, {"count", count.str()}});
    return j.dump();
}

// --- Rooted scaffolding ----------------------------------------------------------

namespace {

struct Rooted {
    int root = 0;
    std::vector<int32_t> parent;
    std::vector<int32_t> order; // post-order, root last
};

Rooted root_tree(const Tree& t, int root) {
    Rooted r;
    const int V = t.vertex_count();
    r.root = root;
    r.parent.assign(static_cast<size_t>(V), -2);
    r.order.reserve(static_cast<size_t>(V));
    std::vector<std::pair<int32_t, size_t>> stack;
    stack.reserve(static_cast<size_t>(V));
    stack.push_back({static_cast<int32_t>(root), 0});
    r.parent[static_cast<size_t>(root)] = -1;
    while (!stack.empty()) {
        int32_t v = stack.back().first;
        size_t ci = stack.back().second;
        const auto& nbrs = t.adjacency()[static_cast<size_t>(v)];
        if (ci < nbrs.size()) {
            stack.back().second = ci + 1;
            int32_t w = nbrs[ci];
            if (w != r.parent[static_cast<size_t>(v)]) {
                r.parent[static_cast<size_t>(w)] = v;
                stack.push_back({w, 0});
            }
            continue;
        }
        r.order.push_back(v);
        stack.pop_back();
    }
    return r;
}

void require_standard(const Tree& t, int n, const char* op) {
    if (t.leaf_count() != n || !t.has_standard_labels())
        throw std::invalid_argument(std::string(op) + ": partition and tree leaf sets differ");
}

// One Steiner-claims pass: marks every vertex used by some big block; a vertex
// claimed twice means two blocks' spanning subtrees intersect.
bool steiner_disjoint(const Tree& t, std::span<const int32_t> parent,
                      std::span<const int32_t> order, const Partition& p,
                      ConvexScratch& sc) {
    const size_t V = static_cast<size_t>(t.vertex_count());
    sc.claimed.assign(V, 0);
    sc.down.assign(V, 0);
    sc.in_block.assign(static_cast<size_t>(p.n()) + 1, 0);
    bool first = true;
    for (const auto& b : p.blocks()) {
        if (b.size() < 2) continue; // singleton subtrees are leaf vertices only
        if (!first) std::fill(sc.down.begin(), sc.down.end(), 0);
        first = false;
        for (int e : b) sc.in_block[static_cast<size_t>(e)] = 1;
        const int size = static_cast<int>(b.size());
        for (int32_t v : order) {
            int d = 0, branches = 0;
            for (int32_t w : t.adjacency()[static_cast<size_t>(v)]) {
                if (w == parent[static_cast<size_t>(v)]) continue;
                d += sc.down[static_cast<size_t>(w)];
                if (sc.down[static_cast<size_t>(w)] > 0) ++branches;
            }
            bool claim;
            if (t.is_leaf(static_cast<int>(v))) {
                bool mine = sc.in_block[static_cast<size_t>(t.label_of(static_cast<int>(v)))] != 0;
                d += mine ? 1 : 0;
                claim = mine;
            } else {
                claim = branches + (size - d > 0 ? 1 : 0) >= 2;
            }
            sc.down[static_cast<size_t>(v)] = static_cast<int32_t>(d);
            if (claim) {
                if (sc.claimed[static_cast<size_t>(v)]) return false;
                sc.claimed[static_cast<size_t>(v)] = 1;
            }
        }
        for (int e : b) sc.in_block[static_cast<size_t>(e)] = 0;
    }
    return true;
}

bool spans_disjoint_blocks(const std::vector<std::vector<int>>& blocks, const int32_t* pos,
                           std::vector<std::pair<int32_t, int32_t>>& spans) {
    spans.clear();
    for (const auto& b : blocks) {
        if (b.size() < 2) continue;
        int32_t lo = pos[b[0]], hi = lo;
        for (size_t i = 1; i < b.size(); ++i) {
            int32_t q = pos[b[i]];
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        spans.emplace_back(lo, hi);
    }
    std::sort(spans.begin(), spans.end());
    for (size_t i = 0; i + 1 < spans.size(); ++i)
        if (spans[i].second >= spans[i + 1].first) return false;
    return true;
}

} // namespace

bool is_convex(const Tree& tree, const Partition& p) {
    require_standard(tree, p.n(), "is_convex");
    if (tree.leaf_count() <= 2) return true;
    Rooted r = root_tree(tree, tree.vertex_of_label(1));
    ConvexScratch sc;
    return steiner_disjoint(tree, r.parent, r.order, p, sc);
}

bool is_convex_caterpillar(const Caterpillar& c, const Partition& p) {
    if (c.size() != p.n())
        throw std::invalid_argument("is_convex_caterpillar: partition and permutation sizes differ");
    auto pos = c.positions();
    std::vector<std::pair<int32_t, int32_t>> spans;
    return spans_disjoint_blocks(p.blocks(), pos.data(), spans);
}

// --- ConvexityTester ---------------------------------------------------------

ConvexityTester::ConvexityTester(const Tree& tree, bool allow_caterpillar_fast_path)
    : tree_(tree) {
    if (!tree_.has_standard_labels())
        throw std::invalid_argument("ConvexityTester: tree must be labeled 1..n");
    if (allow_caterpillar_fast_path) {
        if (auto cat = as_permutation(tree_)) {
            pos_ = cat->positions();
            return;
        }
    }
    if (tree_.leaf_count() >= 2) {
        Rooted r = root_tree(tree_, tree_.vertex_of_label(1));
        parent_ = std::move(r.parent);
        order_ = std::move(r.order);
    }
}

bool ConvexityTester::contains(const Partition& p) const {
    ConvexScratch sc;
    return contains(p, sc);
}

bool ConvexityTester::contains(const Partition& p, ConvexScratch& sc) const {
    if (p.n() != tree_.leaf_count())
        throw std::invalid_argument("ConvexityTester: partition over the wrong ground set");
    if (!pos_.empty()) return spans_disjoint_blocks(p.blocks(), pos_.data(), sc.spans);
    if (tree_.leaf_count() <= 2) return true;
    return steiner_disjoint(tree_, parent_, order_, p, sc);
}

// --- Edge-subset oracle --------------------------------------------------------

namespace {

struct UnionFind {
    std::vector<int32_t> up;
    explicit UnionFind(int n) : up(static_cast<size_t>(n)) {
        for (int i = 0; i < n; ++i) up[static_cast<size_t>(i)] = static_cast<int32_t>(i);
    }
    int find(int x) {
        while (up[static_cast<size_t>(x)] != x) {
            up[static_cast<size_t>(x)] = up[static_cast<size_t>(up[static_cast<size_t>(x)])];
            x = up[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { up[static_cast<size_t>(find(a))] = static_cast<int32_t>(find(b)); }
};

} // namespace

std::vector<Partition> convex_oracle(const Tree& tree, int guard) {
    const int n = tree.leaf_count();
    require_standard(tree, n, "convex_oracle");
    if (n > guard) throw GuardError("convex_oracle", n, guard);
    if (n == 1) return {Partition::single_block(1)};

    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < tree.vertex_count(); ++v)
        for (int32_t w : tree.adjacency()[static_cast<size_t>(v)])
            if (w > v) edges.emplace_back(v, static_cast<int>(w));
    const int E = static_cast<int>(edges.size());

    std::vector<int> vertex_of(static_cast<size_t>(n) + 1, 0);
    for (int lbl = 1; lbl <= n; ++lbl) vertex_of[static_cast<size_t>(lbl)] = tree.vertex_of_label(lbl);

    std::unordered_set<std::string> seen;
    std::vector<Partition> out;
    std::vector<int32_t> block_id(static_cast<size_t>(tree.vertex_count()), -1);
    for (std::uint64_t mask = 0; mask < (1ULL << E); ++mask) {
        UnionFind uf(tree.vertex_count());
        for (int e = 0; e < E; ++e)
            if (!(mask & (1ULL << e))) uf.unite(edges[static_cast<size_t>(e)].first,
                                                edges[static_cast<size_t>(e)].second);
        // restricted-growth encoding of the leaf partition
        std::string rgs(static_cast<size_t>(n), '\0');
        std::fill(block_id.begin(), block_id.end(), -1);
        int next = 0;
        for (int lbl = 1; lbl <= n; ++lbl) {
            int root = uf.find(vertex_of[static_cast<size_t>(lbl)]);
            if (block_id[static_cast<size_t>(root)] < 0)
                block_id[static_cast<size_t>(root)] = next++;
            rgs[static_cast<size_t>(lbl) - 1] =
                static_cast<char>(block_id[static_cast<size_t>(root)]);
        }
        if (seen.insert(rgs).second) {
            std::vector<int> r(rgs.begin(), rgs.end());
            out.push_back(Partition::from_rgs(r));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// --- Direct enumeration --------------------------------------------------------

namespace {

// children ordered by subtree minimum label, for a deterministic stream
struct EnumPlan {
    int root_label = 0;
    std::vector<int32_t> order;                    // non-root vertices, post-order
    std::vector<std::array<int32_t, 2>> children;  // per vertex, -1 for leaves
    std::vector<int32_t> label;                    // leaf label or 0
    std::vector<int32_t> index_of;                 // vertex -> position in order
};

int subtree_min(const Tree& t, int v, int parent, std::vector<int32_t>& mn) {
    if (t.is_leaf(v)) return mn[static_cast<size_t>(v)] = t.label_of(v);
    int m = 1 << 30;
    for (int32_t w : t.adjacency()[static_cast<size_t>(v)])
        if (w != parent) m = std::min(m, subtree_min(t, static_cast<int>(w), v, mn));
    return mn[static_cast<size_t>(v)] = m;
}

void plan_postorder(const Tree& t, int v, int parent, const std::vector<int32_t>& mn,
                    EnumPlan& plan) {
    std::vector<int32_t> kids;
    for (int32_t w : t.adjacency()[static_cast<size_t>(v)])
        if (w != parent) kids.push_back(w);
    std::sort(kids.begin(), kids.end(), [&](int32_t a, int32_t b) {
        return mn[static_cast<size_t>(a)] < mn[static_cast<size_t>(b)];
    });
    for (size_t i = 0; i < kids.size(); ++i) {
        plan_postorder(t, kids[i], v, mn, plan);
        plan.children[static_cast<size_t>(v)][i] = kids[i];
    }
    plan.index_of[static_cast<size_t>(v)] = static_cast<int32_t>(plan.order.size());
    plan.order.push_back(static_cast<int32_t>(v));
}

enum class NodeState : uint8_t { kClosed, kOpen };

class ConvexEnumerator {
public:
    ConvexEnumerator(const Tree& t, const std::function<void(const Partition&)>& emit,
                     const StatsFilter& filter)
        : tree_(t), emit_(emit), filter_(filter) {
        const int V = t.vertex_count();
        int root = t.vertex_of_label(1);
        plan_.children.assign(static_cast<size_t>(V), {-1, -1});
        plan_.index_of.assign(static_cast<size_t>(V), -1);
        plan_.label.assign(static_cast<size_t>(V), 0);
        for (int v = 0; v < V; ++v) plan_.label[static_cast<size_t>(v)] = t.label_of(v);
        plan_.root_label = 1;
        std::vector<int32_t> mn(static_cast<size_t>(V), 0);
        int top = t.adjacency()[static_cast<size_t>(root)].front();
        subtree_min(t, top, root, mn);
        plan_postorder(t, top, root, mn, plan_);
        state_.assign(static_cast<size_t>(V), NodeState::kClosed);
        open_idx_.assign(static_cast<size_t>(V), -1);
    }

    void run() { rec(0); }

private:
    const Tree& tree_;
    const std::function<void(const Partition&)>& emit_;
    const StatsFilter& filter_;
    EnumPlan plan_;
    std::vector<NodeState> state_;
    std::vector<int32_t> open_idx_;            // index into store_
    std::vector<std::vector<int>> store_;      // stack of live blocks
    std::vector<int32_t> closed_;              // indices into store_

    void emit_current() {
        std::vector<std::vector<int>> blocks;
        blocks.reserve(closed_.size() + 1);
        for (int32_t i : closed_) blocks.push_back(store_[static_cast<size_t>(i)]);
        int32_t top = plan_.order.back();
        if (state_[static_cast<size_t>(top)] == NodeState::kOpen) {
            auto blk = store_[static_cast<size_t>(open_idx_[static_cast<size_t>(top)])];
            blk.push_back(plan_.root_label);
            blocks.push_back(std::move(blk));
        } else {
            blocks.push_back({plan_.root_label});
        }
        Partition p = Partition::from_blocks_unchecked(std::move(blocks));
        if (!filter_ || filter_(p.stats())) emit_(p);
    }

    void rec(size_t idx) {
        if (idx == plan_.order.size()) {
            emit_current();
            return;
        }
        int32_t v = plan_.order[idx];
        if (plan_.label[static_cast<size_t>(v)] > 0) {
            // leaf: finished singleton, or an open block growing upward
            store_.push_back({plan_.label[static_cast<size_t>(v)]});
            closed_.push_back(static_cast<int32_t>(store_.size()) - 1);
            state_[static_cast<size_t>(v)] = NodeState::kClosed;
            rec(idx + 1);
            closed_.pop_back();
            // reuse the stored block as the open block
            state_[static_cast<size_t>(v)] = NodeState::kOpen;
            open_idx_[static_cast<size_t>(v)] = static_cast<int32_t>(store_.size()) - 1;
            rec(idx + 1);
            store_.pop_back();
            return;
        }
        int32_t c1 = plan_.children[static_cast<size_t>(v)][0];
        int32_t c2 = plan_.children[static_cast<size_t>(v)][1];
        bool o1 = state_[static_cast<size_t>(c1)] == NodeState::kOpen;
        bool o2 = state_[static_cast<size_t>(c2)] == NodeState::kOpen;
        if (!o1 && !o2) {
            state_[static_cast<size_t>(v)] = NodeState::kClosed;
            rec(idx + 1);
            return;
        }
        if (o1 != o2) {
            // the open block passes through; the edge above v stays inside it
            state_[static_cast<size_t>(v)] = NodeState::kOpen;
            open_idx_[static_cast<size_t>(v)] = open_idx_[static_cast<size_t>(o1 ? c1 : c2)];
            rec(idx + 1);
            return;
        }
        // both children open: their blocks meet at v and must merge
        const auto& b1 = store_[static_cast<size_t>(open_idx_[static_cast<size_t>(c1)])];
        const auto& b2 = store_[static_cast<size_t>(open_idx_[static_cast<size_t>(c2)])];
        std::vector<int> merged;
        merged.reserve(b1.size() + b2.size());
        merged.insert(merged.end(), b1.begin(), b1.end());
        merged.insert(merged.end(), b2.begin(), b2.end());
        store_.push_back(std::move(merged));
        // close the merged block here...
        closed_.push_back(static_cast<int32_t>(store_.size()) - 1);
        state_[static_cast<size_t>(v)] = NodeState::kClosed;
        rec(idx + 1);
        closed_.pop_back();
        // ...or keep growing it upward
        state_[static_cast<size_t>(v)] = NodeState::kOpen;
        open_idx_[static_cast<size_t>(v)] = static_cast<int32_t>(store_.size()) - 1;
        rec(idx + 1);
        store_.pop_back();
    }
};

} // namespace

void enumerate_convex(const Tree& tree, const std::function<void(const Partition&)>& emit,
                      const StatsFilter& filter, int guard) {
    const int n = tree.leaf_count();
    require_standard(tree, n, "enumerate_convex");
    if (n > guard) throw GuardError("enumerate_convex", n, guard);
    if (n == 1) {
        Partition p = Partition::single_block(1);
        if (!filter || filter(p.stats())) emit(p);
        return;
    }
    ConvexEnumerator e(tree, emit, filter);
    e.run();
}

std::vector<Partition> enumerate_convex_list(const Tree& tree, const StatsFilter& filter,
                                             int guard) {
    std::vector<Partition> out;
    enumerate_convex(tree, [&](const Partition& p) { out.push_back(p); }, filter, guard);
    return out;
}

// --- Counting DP ----------------------------------------------------------------

namespace {

// table[c][ell]: number of partial assignments with c finished blocks, ell of
// them singletons; tracked separately for "open" and "closed" root-edge state.
using DpTable = std::vector<std::vector<Count>>;

DpTable make_table(int c_max) {
    return DpTable(static_cast<size_t>(c_max) + 1,
                   std::vector<Count>(static_cast<size_t>(c_max) + 1));
}

struct DpPair {
    DpTable open, closed;
    int leaves = 0;
};

DpPair dp_leaf() {
    DpPair p;
    p.leaves = 1;
    p.open = make_table(1);
    p.closed = make_table(1);
    p.open[0][0] = 1;   // block {x} continuing upward
    p.closed[1][1] = 1; // singleton {x} finished at the leaf
    return p;
}

DpPair dp_combine(const DpPair& a, const DpPair& b) {
    DpPair r;
    r.leaves = a.leaves + b.leaves;
    r.open = make_table(r.leaves);
    r.closed = make_table(r.leaves);
    for (int c1 = 0; c1 <= a.leaves; ++c1)
        for (int l1 = 0; l1 <= c1; ++l1) {
            const Count& ao = a.open[static_cast<size_t>(c1)][static_cast<size_t>(l1)];
            const Count& ac = a.closed[static_cast<size_t>(c1)][static_cast<size_t>(l1)];
            if (ao == 0 && ac == 0) continue;
            for (int c2 = 0; c2 <= b.leaves; ++c2)
                for (int l2 = 0; l2 <= c2; ++l2) {
                    const Count& bo = b.open[static_cast<size_t>(c2)][static_cast<size_t>(l2)];
                    const Count& bc = b.closed[static_cast<size_t>(c2)][static_cast<size_t>(l2)];
                    if (bo == 0 && bc == 0) continue;
                    const size_t c = static_cast<size_t>(c1 + c2);
                    const size_t l = static_cast<size_t>(l1 + l2);
                    // open/closed and closed/open: the open block passes through
                    r.open[c][l] += ao * bc + ac * bo;
                    // open/open: blocks merge at this vertex...
                    Count both = ao * bo;
                    if (both != 0) {
                        r.open[c][l] += both;          // ...and keep growing
                        r.closed[c + 1][l] += both;    // ...or finish here (size >= 2)
                    }
                    // closed/closed: nothing alive on this edge
                    r.closed[c][l] += ac * bc;
                }
        }
    return r;
}

DpPair dp_subtree(const Tree& t, int v, int parent) {
    if (t.is_leaf(v)) return dp_leaf();
    std::vector<DpPair> parts;
    for (int32_t w : t.adjacency()[static_cast<size_t>(v)])
        if (w != parent) parts.push_back(dp_subtree(t, static_cast<int>(w), v));
    DpPair r = std::move(parts.front());
    for (size_t i = 1; i < parts.size(); ++i) r = dp_combine(r, parts[i]);
    return r;
}

} // namespace

CountTable count_convex(const Tree& tree) {
    const int n = tree.leaf_count();
    require_standard(tree, n, "count_convex");
    std::map<std::pair<int, int>, Count> cells;
    if (n == 1) {
        cells[{1, 1}] = 1;
        return CountTable::from_cells(1, std::move(cells));
    }
    int root = tree.vertex_of_label(1);
    int top = tree.adjacency()[static_cast<size_t>(root)].front();
    DpPair dp = dp_subtree(tree, top, root);
    for (int c = 0; c <= dp.leaves; ++c)
        for (int l = 0; l <= c; ++l) {
            const Count& open = dp.open[static_cast<size_t>(c)][static_cast<size_t>(l)];
            const Count& closed = dp.closed[static_cast<size_t>(c)][static_cast<size_t>(l)];
            // open block absorbs the root leaf; closed state leaves it a singleton
            if (open != 0) cells[{c + 1, l}] += open;
            if (closed != 0) cells[{c + 1, l + 1}] += closed;
        }
    return CountTable::from_cells(n, std::move(cells));
}

// --- CharacterPack ----------------------------------------------------------------

void CharacterPack::add(const Partition& p) {
    for (const auto& b : p.blocks()) {
        if (b.size() < 2) continue;
        labels.insert(labels.end(), b.begin(), b.end());
        block_end.push_back(static_cast<int32_t>(labels.size()));
    }
    part_block_end.push_back(static_cast<int32_t>(block_end.size()));
    auto st = p.stats();
    k_of.push_back(static_cast<int16_t>(st.k));
    ell_of.push_back(static_cast<int16_t>(st.ell));
}

bool CharacterPack::spans_disjoint(size_t idx, const int32_t* pos) const {
    const int32_t bfirst = idx == 0 ? 0 : part_block_end[idx - 1];
    const int32_t blast = part_block_end[idx];
    std::array<std::pair<int32_t, int32_t>, 64> spans;
    size_t s = 0;
    int32_t lstart = bfirst == 0 ? 0 : block_end[static_cast<size_t>(bfirst) - 1];
    for (int32_t b = bfirst; b < blast; ++b) {
        const int32_t lend = block_end[static_cast<size_t>(b)];
        int32_t lo = pos[labels[static_cast<size_t>(lstart)]];
        int32_t hi = lo;
        for (int32_t i = lstart + 1; i < lend; ++i) {
            int32_t q = pos[labels[static_cast<size_t>(i)]];
            if (q < lo) lo = q;
            if (q > hi) hi = q;
        }
        spans[s++] = {lo, hi};
        lstart = lend;
    }
    std::sort(spans.begin(), spans.begin() + static_cast<long>(s));
    for (size_t i = 0; i + 1 < s; ++i)
        if (spans[i].second >= spans[i + 1].first) return false;
    return true;
}

CharacterPack pack_convex_characters(const Tree& tree, const StatsFilter& filter, int guard) {
    CharacterPack pack;
    pack.n = tree.leaf_count();
    enumerate_convex(tree, [&](const Partition& p) { pack.add(p); }, filter, guard);
    return pack;
}

} // namespace ccx
