#include <doctest.h>

#include <set>
#include <sstream>

#include "ccx/metrics.hpp"
#include "ccx/rng.hpp"

using namespace ccx;

TEST_SUITE_BEGIN("metrics");

namespace {

Tree cat(std::vector<int> p) { return caterpillar_tree(Caterpillar(std::move(p))); }

// |(P(T) Δ P(F)) ∩ P_{n,k}| straight from the edge-subset oracles.
Count dk_by_oracle(const Tree& a, const Tree& b, int k) {
    auto pa = convex_oracle(a);
    auto pb = convex_oracle(b);
    std::set<Partition> sa(pa.begin(), pa.end()), sb(pb.begin(), pb.end());
    Count d = 0;
    for (const auto& p : sa)
        if (static_cast<int>(p.blocks().size()) == k && !sb.count(p)) ++d;
    for (const auto& p : sb)
        if (static_cast<int>(p.blocks().size()) == k && !sa.count(p)) ++d;
    return d;
}

} // namespace

TEST_CASE("five-leaf worked example") {
    Tree a = cat({1, 2, 3, 4, 5});
    Tree b = cat({1, 3, 2, 4, 5});
    CHECK(dk_distance(a, b, 2) == 2);
    CHECK(dk_distance(a, b, 2) == dk_by_oracle(a, b, 2));
    CHECK(dk_distance(a, b, 3) == dk_by_oracle(a, b, 3));
    CHECK(rf_distance(a, b) == 2);
    CHECK(quartet_distance(a, b) == 2);
    // every differing quartet contributes one partition from each tree
    CHECK(dk_distance(a, b, 3) == 4);
    CHECK(dk_distance(a, b, 3) == 2 * quartet_distance(a, b));
    CHECK(dk_distance(a, a, 2) == 0);
    CHECK(dk_distance(a, a, 3) == 0);
    CHECK(character_distance(a, a) == 0);
}

TEST_CASE("preconditions") {
    Tree a = cat({1, 2, 3, 4, 5});
    CHECK_THROWS_AS(dk_distance(a, a, 1), std::invalid_argument);
    CHECK_THROWS_AS(dk_distance(a, a, 4), std::invalid_argument);
    CHECK_THROWS_AS(rf_distance(cat({1, 2, 3}), cat({1, 2, 3})), std::invalid_argument);
    CHECK_THROWS_AS(dk_distance(a, cat({1, 2, 3, 4}), 2), std::invalid_argument);
}

TEST_CASE("four-leaf pair: single internal split each") {
    Tree a = parse_newick("((1,2),(3,4));");
    Tree b = parse_newick("((1,3),(2,4));");
    CHECK(rf_distance(a, b) == 2);
    CHECK(quartet_distance(a, b) == 1);
    CHECK(dk_distance(a, b, 2) == rf_distance(a, b));
    CHECK(dk_distance(a, b, 2) == 2 * quartet_distance(a, b)); // n-2 == 2 here
}

TEST_CASE("d2 is RF and d_{n-2} is quartet; d is the sum") {
    SplitMix64 rng(61);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 4 + static_cast<int>(rng.below(7)); // up to 10 here; acceptance goes to 12
        Tree a = random_tree(n, rng.next());
        Tree b = random_tree(n, rng.next());
        DistanceReport rep = distance_report(a, b);
        CHECK(rep.per_k.front().k == 2);
        CHECK(rep.per_k.back().k == n - 2);
        CHECK(rep.per_k.front().dk == rep.rf);
        CHECK(rep.per_k.back().dk == 2 * Count(rep.quartet));
        Count sum = 0;
        for (const auto& row : rep.per_k) {
            sum += row.dk;
            CHECK(row.dk >= 0);
            CHECK(row.dk % 2 == 0);
        }
        CHECK(sum == rep.d_total);
        CHECK(character_distance(a, b) == rep.d_total);
        // total via shared grand count
        const Tree pair[2] = {a, b};
        CountTable shared = coconvex_counts(pair);
        Count all_k = 0;
        for (int k = 2; k <= n - 2; ++k) all_k += binomial(2LL * n - k - 1, k - 1);
        Count shared_mid = 0;
        for (int k = 2; k <= n - 2; ++k) shared_mid += shared.by_k[static_cast<size_t>(k)];
        CHECK(rep.d_total == 2 * all_k - 2 * shared_mid);
    }
}

TEST_CASE("metric axioms") {
    SplitMix64 rng(67);
    // positivity on non-isomorphic pairs
    int checked = 0;
    while (checked < 200) {
        int n = 4 + static_cast<int>(rng.below(6)); // up to 9
        Tree a = random_tree(n, rng.next());
        Tree b = random_tree(n, rng.next());
        if (trees_isomorphic(a, b)) continue;
        ++checked;
        int k = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 3)));
        Count d = dk_distance(a, b, k);
        CHECK(d > 0);
        CHECK(dk_distance(b, a, k) == d);
    }
    // triangle inequality
    for (int trial = 0; trial < 100; ++trial) {
        int n = 4 + static_cast<int>(rng.below(5));
        Tree a = random_tree(n, rng.next());
        Tree b = random_tree(n, rng.next());
        Tree c = random_tree(n, rng.next());
        int k = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 3)));
        CHECK(dk_distance(a, b, k) + dk_distance(b, c, k) >= dk_distance(a, c, k));
    }
}

TEST_CASE("isomorphic trees are at distance zero everywhere") {
    SplitMix64 rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 4 + static_cast<int>(rng.below(6));
        Tree a = random_tree(n, rng.next());
        Tree b = parse_newick(write_newick(a)); // same tree, rebuilt
        DistanceReport rep = distance_report(a, b);
        CHECK(rep.d_total == 0);
        CHECK(rep.rf == 0);
        CHECK(rep.quartet == 0);
    }
}

TEST_CASE("distance matrix") {
    std::vector<Tree> trees{cat({1, 2, 3, 4, 5}), cat({1, 3, 2, 4, 5}), cat({2, 4, 1, 3, 5})};
    auto m = distance_matrix(trees, Metric::kRf);
    CHECK(m.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(m[i][i] == 0);
        for (size_t j = 0; j < 3; ++j) CHECK(m[i][j] == m[j][i]);
    }
    CHECK(m[0][1] == 2);
    auto m2 = distance_matrix(trees, Metric::kDk, 2, /*threads=*/2);
    CHECK(m2 == m);
    std::ostringstream csv;
    write_matrix_csv(csv, m);
    CHECK(csv.str().find("0,2,") != std::string::npos);
}

TEST_CASE("report serialization") {
    Tree a = cat({1, 2, 3, 4, 5});
    Tree b = cat({1, 3, 2, 4, 5});
    DistanceReport rep = distance_report(a, b);
    std::ostringstream csv;
    rep.write_csv(csv);
    CHECK(csv.str().find("k,shared,dk\n") != std::string::npos);
    auto j = rep.to_json();
    CHECK(j.find("\"rf\":2") != std::string::npos);
    CHECK(j.find("\"quartet\":2") != std::string::npos);
}

TEST_SUITE_END();
