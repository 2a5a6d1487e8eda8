#include "ccx/metrics.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "ccx/errors.hpp"
#include "ccx/parallel.hpp"

namespace ccx {

namespace {

int require_pair(const Tree& a, const Tree& b, const char* op) {
    if (a.leaf_labels() != b.leaf_labels())
        throw std::invalid_argument(std::string(op) + ": mismatched leaf sets");
    const int n = a.leaf_count();
    if (n < 4) throw std::invalid_argument(std::string(op) + ": requires n >= 4");
    return n;
}

// Label paired with the smallest label in a 4-leaf tree (identifies the quartet).
int quartet_partner(const Tree& t) {
    int min_label = t.leaf_labels().front();
    int v = t.vertex_of_label(min_label);
    int inner = t.adjacency()[static_cast<size_t>(v)].front();
    for (int32_t w : t.adjacency()[static_cast<size_t>(inner)]) {
        if (w == v || !t.is_leaf(static_cast<int>(w))) continue;
        return t.label_of(static_cast<int>(w));
    }
    throw std::logic_error("quartet_partner: malformed quartet");
}

} // namespace

DistanceReport distance_report(const Tree& a, const Tree& b, int guard, int quartet_guard) {
    const int n = require_pair(a, b, "distance_report");
    DistanceReport rep;
    rep.n = n;
    const Tree trees[2] = {a, b};
    CountTable shared = coconvex_counts(trees, guard);
    rep.d_total = 0;
    for (int k = 2; k <= n - 2; ++k) {
        DistanceReport::Row row;
        row.k = k;
        row.shared = shared.by_k[static_cast<size_t>(k)];
        row.dk = 2 * binomial(2LL * n - k - 1, k - 1) - 2 * row.shared;
        rep.d_total += row.dk;
        rep.per_k.push_back(std::move(row));
    }
    rep.rf = rf_distance(a, b);
    rep.quartet = quartet_distance(a, b, quartet_guard);
    return rep;
}

Count dk_distance(const Tree& a, const Tree& b, int k, int guard) {
    const int n = require_pair(a, b, "dk_distance");
    if (k < 2 || k > n - 2)
        throw std::invalid_argument("dk_distance: k must satisfy 2 <= k <= n-2");
    const Tree trees[2] = {a, b};
    CountTable shared = coconvex_counts(trees, guard);
    return 2 * binomial(2LL * n - k - 1, k - 1) - 2 * shared.by_k[static_cast<size_t>(k)];
}

Count character_distance(const Tree& a, const Tree& b, int guard) {
    const int n = require_pair(a, b, "character_distance");
    const Tree trees[2] = {a, b};
    CountTable shared = coconvex_counts(trees, guard);
    Count d = 0;
    for (int k = 2; k <= n - 2; ++k)
        d += 2 * binomial(2LL * n - k - 1, k - 1) - 2 * shared.by_k[static_cast<size_t>(k)];
    return d;
}

long long rf_distance(const Tree& a, const Tree& b) {
    require_pair(a, b, "rf_distance");
    auto sa = nontrivial_splits(a);
    auto sb = nontrivial_splits(b);
    long long common = 0;
    for (const auto& s : sa)
        if (sb.count(s)) ++common;
    return static_cast<long long>(sa.size()) + static_cast<long long>(sb.size()) - 2 * common;
}

long long quartet_distance(const Tree& a, const Tree& b, int guard) {
    const int n = require_pair(a, b, "quartet_distance");
    if (n > guard) throw GuardError("quartet_distance", n, guard);
    const auto labels = a.leaf_labels();
    long long differ = 0;
    std::vector<int> y(4);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    y[0] = labels[static_cast<size_t>(i)];
                    y[1] = labels[static_cast<size_t>(j)];
                    y[2] = labels[static_cast<size_t>(k)];
                    y[3] = labels[static_cast<size_t>(l)];
                    if (quartet_partner(restrict_to(a, y)) != quartet_partner(restrict_to(b, y)))
                        ++differ;
                }
    return differ;
}

std::vector<std::vector<Count>> distance_matrix(std::span<const Tree> trees, Metric metric, int k,
                                                int threads, int guard, int quartet_guard) {
    const size_t t = trees.size();
    std::vector<std::vector<Count>> m(t, std::vector<Count>(t, 0));
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < t; ++i)
        for (size_t j = i + 1; j < t; ++j) pairs.emplace_back(i, j);
    parallel_for_jobs(pairs.size(), threads, [&](size_t p) {
        auto [i, j] = pairs[p];
        Count d;
        switch (metric) {
            case Metric::kDk: d = dk_distance(trees[i], trees[j], k, guard); break;
            case Metric::kCharacter: d = character_distance(trees[i], trees[j], guard); break;
            case Metric::kRf: d = rf_distance(trees[i], trees[j]); break;
            case Metric::kQuartet: d = quartet_distance(trees[i], trees[j], quartet_guard); break;
        }
        m[i][j] = d;
        m[j][i] = std::move(d);
    });
    return m;
}

void write_matrix_csv(std::ostream& out, const std::vector<std::vector<Count>>& m) {
    out << "# schema=ccx.matrix.v1\n";
    for (const auto& row : m) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
}

void DistanceReport::write_csv(std::ostream& out) const {
    out << "# schema=ccx.dist.v1\n";
    out << "k,shared,dk\n";
    for (const auto& row : per_k) out << row.k << ',' << row.shared << ',' << row.dk << '\n';
}

std::string DistanceReport::to_json() const {
    nlohmann::json j;
    j["schema"] = "ccx.dist.v1";
    j["n"] = n;
    auto& rows = j["per_k"] = nlohmann::json::array();
    for (const auto& row : per_k)
        rows.push_back({{"k", row.k}, {"shared", row.shared.str()}, {"dk", row.dk.str()}});
    j["d_total"] = d_total.str();
    j["rf"] = rf;
    j["quartet"] = quartet;
    return j.dump();
}

} // namespace ccx
