#include "ccx/caterpillar.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>

#include "ccx/errors.hpp"
#include "ccx/rng.hpp"

namespace ccx {

Caterpillar::Caterpillar(std::vector<int> perm) : perm_(std::move(perm)) {
    const int n = static_cast<int>(perm_.size());
    if (n < 1) throw std::invalid_argument("caterpillar: empty permutation");
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    for (int v : perm_) {
        if (v < 1 || v > n || seen[static_cast<size_t>(v)])
            throw std::invalid_argument("caterpillar: not a permutation of [" +
                                        std::to_string(n) + "]");
        seen[static_cast<size_t>(v)] = 1;
    }
}

Caterpillar Caterpillar::identity(int n) {
    std::vector<int> p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i + 1;
    return Caterpillar(std::move(p));
}

Caterpillar Caterpillar::parse(std::string_view text) {
    std::vector<int> values;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == ',' || c == '\t' || c == '(' || c == ')' || c == '\r' || c == '\n') {
            ++i;
            continue;
        }
        int value = 0;
        auto [p, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
        if (ec != std::errc{}) throw ParseError("permutation: expected integer");
        values.push_back(value);
        i = static_cast<size_t>(p - text.data());
    }
    if (values.empty()) throw ParseError("permutation: empty");
    try {
        return Caterpillar(std::move(values));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::vector<int32_t> Caterpillar::positions() const {
    std::vector<int32_t> pos(perm_.size() + 1, 0);
    for (int i = 0; i < size(); ++i)
        pos[static_cast<size_t>(perm_[static_cast<size_t>(i)])] = i;
    return pos;
}

namespace {

std::vector<int> swap_first(std::vector<int> p) {
    if (p.size() >= 2) std::swap(p[0], p[1]);
    return p;
}
std::vector<int> swap_last(std::vector<int> p) {
    if (p.size() >= 2) std::swap(p[p.size() - 2], p[p.size() - 1]);
    return p;
}
std::vector<int> reversed(std::vector<int> p) {
    std::reverse(p.begin(), p.end());
    return p;
}

std::set<std::vector<int>> orbit_closure(const std::vector<int>& perm) {
    std::set<std::vector<int>> seen{perm};
    std::vector<std::vector<int>> frontier{perm};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& p : frontier)
            for (auto&& img : {swap_first(p), swap_last(p), reversed(p)})
                if (seen.insert(img).second) next.push_back(std::move(img));
        frontier = std::move(next);
    }
    return seen;
}

} // namespace

Caterpillar Caterpillar::canonical() const {
    auto orbit = orbit_closure(perm_);
    return Caterpillar(*orbit.begin());
}

Caterpillar canonical_caterpillar(std::span<const int> perm) {
    return Caterpillar(std::vector<int>(perm.begin(), perm.end())).canonical();
}

std::vector<Caterpillar> caterpillar_orbit(const Caterpillar& c) {
    std::vector<Caterpillar> out;
    for (const auto& p : orbit_closure(c.perm())) out.push_back(Caterpillar(p));
    return out;
}

std::string Caterpillar::to_string() const {
    std::string out;
    for (int i = 0; i < size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(perm_[static_cast<size_t>(i)]);
    }
    return out;
}

Tree caterpillar_tree(const Caterpillar& c) {
    const int n = c.size();
    Tree t;
    if (n == 1) {
        t.add_vertex(1);
        return t;
    }
    if (n == 2) {
        int a = t.add_vertex(c.at(0));
        int b = t.add_vertex(c.at(1));
        t.add_edge(a, b);
        t.validate();
        return t;
    }
    std::vector<int> leaf(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) leaf[static_cast<size_t>(i)] = t.add_vertex(c.at(i));
    std::vector<int> backbone(static_cast<size_t>(n) - 2);
    for (int i = 0; i < n - 2; ++i) backbone[static_cast<size_t>(i)] = t.add_vertex(0);
    for (int i = 0; i + 1 < n - 2; ++i)
        t.add_edge(backbone[static_cast<size_t>(i)], backbone[static_cast<size_t>(i) + 1]);
    t.add_edge(leaf[0], backbone[0]);
    for (int i = 1; i < n - 1; ++i)
        t.add_edge(leaf[static_cast<size_t>(i)], backbone[static_cast<size_t>(i) - 1]);
    t.add_edge(leaf[static_cast<size_t>(n) - 1], backbone[static_cast<size_t>(n) - 3]);
    t.validate();
    return t;
}

std::optional<Caterpillar> as_permutation(const Tree& tree) {
    tree.validate();
    const int n = tree.leaf_count();
    if (!tree.has_standard_labels())
        throw std::invalid_argument("as_permutation: tree must be labeled 1..n");
    if (n <= 3) {
        // Unique topology; the single caterpillar class.
        return Caterpillar::identity(n);
    }
    const int V = tree.vertex_count();
    // The backbone must be a path: every internal vertex has at most 2
    // internal neighbors, exactly two of them have 1.
    std::vector<int> internal_deg(static_cast<size_t>(V), 0);
    for (int v = 0; v < V; ++v) {
        if (tree.is_leaf(v)) continue;
        for (int32_t w : tree.adjacency()[static_cast<size_t>(v)])
            if (!tree.is_leaf(static_cast<int>(w))) ++internal_deg[static_cast<size_t>(v)];
    }
    int ends = 0, end0 = -1;
    for (int v = 0; v < V; ++v) {
        if (tree.is_leaf(v)) continue;
        if (internal_deg[static_cast<size_t>(v)] > 2) return std::nullopt;
        if (internal_deg[static_cast<size_t>(v)] == 1) {
            ++ends;
            if (end0 < 0) end0 = v;
        }
        if (internal_deg[static_cast<size_t>(v)] == 0) return std::nullopt; // n >= 4 has >= 2 internals
    }
    if (ends != 2) return std::nullopt;

    // Walk the backbone from one end, reading leaves off in order.
    std::vector<int> perm;
    perm.reserve(static_cast<size_t>(n));
    int prev = -1, cur = end0;
    while (cur != -1) {
        std::vector<int> here;
        int next = -1;
        for (int32_t w : tree.adjacency()[static_cast<size_t>(cur)]) {
            if (tree.is_leaf(static_cast<int>(w)))
                here.push_back(tree.label_of(static_cast<int>(w)));
            else if (w != prev)
                next = static_cast<int>(w);
        }
        std::sort(here.begin(), here.end());
        for (int l : here) perm.push_back(l);
        prev = cur;
        cur = next;
    }
    return Caterpillar(std::move(perm)).canonical();
}

Caterpillar random_permutation(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_permutation: n must be >= 1");
    SplitMix64 rng(seed, /*stream=*/1);
    std::vector<int> p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i + 1;
    for (int i = n - 1; i >= 1; --i) {
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(p[static_cast<size_t>(i)], p[static_cast<size_t>(j)]);
    }
    return Caterpillar(std::move(p));
}

void enumerate_canonical_caterpillars(int n, const std::function<void(const Caterpillar&)>& emit,
                                      int guard) {
    if (n < 1) throw std::invalid_argument("enumerate_canonical_caterpillars: n must be >= 1");
    if (n > guard) throw GuardError("enumerate_canonical_caterpillars", n, guard);
    if (n <= 3) {
        emit(Caterpillar::identity(n));
        return;
    }
    // For n >= 4 the canonical (lex-least orbit member) permutations are
    // exactly those with p[0] < p[1], p[0] < p[n-2] < p[n-1]: the eight orbit
    // members start with p[0], p[0], p[1], p[1], p[n-2], p[n-2], p[n-1],
    // p[n-1], and the only tie is broken at position n-2. A unit test checks
    // this against the orbit-closure definition exhaustively.
    std::vector<int> p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i + 1;
    do {
        if (p[0] < p[1] && p[0] < p[static_cast<size_t>(n) - 2] &&
            p[static_cast<size_t>(n) - 2] < p[static_cast<size_t>(n) - 1])
            emit(Caterpillar(p));
    } while (std::next_permutation(p.begin(), p.end()));
}

std::uint64_t canonical_caterpillar_count(int n) {
    if (n <= 3) return 1;
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f / 8;
}

} // namespace ccx
