#include <doctest.h>

#include <algorithm>
#include <set>

#include "ccx/coconvex.hpp"
#include "ccx/rng.hpp"

using namespace ccx;

TEST_SUITE_BEGIN("coconvex");

namespace {
const char* kFig1Left = "(1,2,(3,(4,(5,(6,7)))));";
const char* kFig1Right = "((1,2),((6,7),(3,(4,5))));";

std::vector<Tree> fig1_pair() {
    return {parse_newick(kFig1Left), parse_newick(kFig1Right)};
}
} // namespace

TEST_CASE("membership") {
    auto pair = fig1_pair();
    CHECK(is_coconvex(pair, Partition::parse("1,2,3|4,5|6,7")));
    CHECK_FALSE(is_coconvex(pair, Partition::parse("1,2,3,4|5,6,7")));
    CHECK(is_coconvex(pair, Partition::parse("1,2,3,4|5|6|7"))); // trivial
    CHECK_THROWS_AS(is_coconvex(std::vector<Tree>{}, Partition::discrete(3)),
                    std::invalid_argument);
    std::vector<Tree> bad{parse_newick("(1,2,(3,4));"), parse_newick("(1,2,(3,(4,5)));")};
    CHECK_THROWS_AS(is_coconvex(bad, Partition::discrete(4)), std::invalid_argument);
}

TEST_CASE("identical trees reproduce the single-tree census") {
    Tree t = parse_newick(kFig1Right);
    std::vector<Tree> twice{t, t};
    CountTable pair_counts = coconvex_counts(twice);
    CountTable single = count_convex(t);
    CHECK(pair_counts.by_k == single.by_k);
    CHECK(pair_counts.by_k_ell == single.by_k_ell);
    CHECK(pair_counts.total == single.total);
}

TEST_CASE("figure pair boundary counts") {
    auto pair = fig1_pair();
    CountTable c = coconvex_counts(pair);
    CHECK(c.by_k[1] == 1);
    CHECK(c.by_k[7] == 1);
}

TEST_CASE("five-leaf example: six shared bipartitions") {
    std::vector<Tree> pair{caterpillar_tree(Caterpillar::identity(5)),
                           caterpillar_tree(Caterpillar(std::vector<int>{1, 3, 2, 4, 5}))};
    auto shared = coconvex_list(pair, [](const PartitionStats& s) { return s.k == 2; });
    CHECK(shared.size() == 6);
    // brute force over both oracle sets agrees
    auto oa = convex_oracle(pair[0]);
    auto ob = convex_oracle(pair[1]);
    std::set<Partition> sb(ob.begin(), ob.end());
    std::vector<Partition> expect;
    for (const auto& p : oa)
        if (p.blocks().size() == 2 && sb.count(p)) expect.push_back(p);
    std::sort(shared.begin(), shared.end());
    std::sort(expect.begin(), expect.end());
    CHECK(shared == expect);
    CHECK(std::count_if(shared.begin(), shared.end(), [](const Partition& p) {
              return p.stats().nontrivial();
          }) == 1); // 123|45 is the only nontrivial one
    CHECK(std::find(shared.begin(), shared.end(), Partition::parse("1,2,3|4,5")) != shared.end());
}

TEST_CASE("enumeration equals the oracle intersection on random collections") {
    SplitMix64 rng(43);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 4 + static_cast<int>(rng.below(4));
        int t = 2 + static_cast<int>(rng.below(2));
        std::vector<Tree> trees;
        for (int i = 0; i < t; ++i) trees.push_back(random_tree(n, rng.next()));
        std::set<Partition> expect;
        {
            auto first = convex_oracle(trees[0]);
            expect.insert(first.begin(), first.end());
            for (int i = 1; i < t; ++i) {
                auto more = convex_oracle(trees[static_cast<size_t>(i)]);
                std::set<Partition> keep(more.begin(), more.end());
                for (auto it = expect.begin(); it != expect.end();)
                    it = keep.count(*it) ? std::next(it) : expect.erase(it);
            }
        }
        auto got = coconvex_list(trees);
        CHECK(got.size() == expect.size());
        CHECK(std::set<Partition>(got.begin(), got.end()) == expect);
    }
}

TEST_CASE("floors from trivial characters") {
    SplitMix64 rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 4 + static_cast<int>(rng.below(6));
        std::vector<Tree> trees{random_tree(n, rng.next()), random_tree(n, rng.next())};
        CountTable c = coconvex_counts(trees);
        CHECK(c.total >= pow2(n) - n);
        for (int k = 1; k <= n - 1; ++k)
            CHECK(c.by_k[static_cast<size_t>(k)] >= binomial(n, k - 1));
        CHECK(c.by_k[static_cast<size_t>(n)] == 1);

        // nontrivial-free collections sit exactly on the floor
        Count nontrivial_total = 0;
        for (int k = 0; k <= n; ++k) nontrivial_total += c.by_k_nontrivial[static_cast<size_t>(k)];
        CHECK((nontrivial_total == 0) == (c.total == pow2(n) - n));
    }
}

TEST_CASE("relabeling invariance") {
    SplitMix64 rng(53);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 4 + static_cast<int>(rng.below(7));
        std::vector<Tree> trees{random_tree(n, rng.next()), random_tree(n, rng.next()),
                                caterpillar_tree(random_permutation(n, rng.next()))};
        auto sigma = random_permutation(n, rng.next());
        std::vector<int> mapping(static_cast<size_t>(n) + 1, 0);
        for (int i = 1; i <= n; ++i) mapping[static_cast<size_t>(i)] = sigma.at(i - 1);
        std::vector<Tree> relabeled;
        for (const auto& t : trees) relabeled.push_back(relabel(t, mapping));
        CountTable before = coconvex_counts(trees);
        CountTable after = coconvex_counts(relabeled);
        CHECK(before.by_k == after.by_k);
        CHECK(before.by_k_ell == after.by_k_ell);
        CHECK(before.total == after.total);
    }
}

TEST_CASE("adding a tree never increases any count") {
    SplitMix64 rng(59);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 4 + static_cast<int>(rng.below(6));
        std::vector<Tree> two{random_tree(n, rng.next()), random_tree(n, rng.next())};
        std::vector<Tree> three = two;
        three.push_back(random_tree(n, rng.next()));
        CountTable c2 = coconvex_counts(two);
        CountTable c3 = coconvex_counts(three);
        CHECK(c3.total <= c2.total);
        for (int k = 0; k <= n; ++k) {
            CHECK(c3.by_k[static_cast<size_t>(k)] <= c2.by_k[static_cast<size_t>(k)]);
            CHECK(c3.by_k_nontrivial[static_cast<size_t>(k)] <=
                  c2.by_k_nontrivial[static_cast<size_t>(k)]);
        }
    }
}

TEST_SUITE_END();
