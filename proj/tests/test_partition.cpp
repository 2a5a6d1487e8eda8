#include <doctest.h>

#include <set>

#include "ccx/errors.hpp"
#include "ccx/partition.hpp"
#include "ccx/rng.hpp"

using namespace ccx;

TEST_SUITE_BEGIN("partition");

TEST_CASE("parse and format round-trip") {
    Partition p = Partition::parse("1,2,3|4,5|6,7");
    CHECK(p.blocks().size() == 3);
    auto st = p.stats();
    CHECK(st.k == 3);
    CHECK(st.s == 3);
    CHECK(st.ell == 0);
    CHECK(p.format() == "1,2,3|4,5|6,7");

    CHECK(Partition::parse("3,1|2").format() == "1,3|2");
    Partition d = Partition::parse("1|2|3|4");
    CHECK(d.stats().k == 4);
    CHECK(d == Partition::discrete(4));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(Partition::parse("1,1|2"), ParseError);   // duplicate
    CHECK_THROWS_AS(Partition::parse("1,3"), ParseError);     // 2 missing -> outside [n]
    CHECK_THROWS_AS(Partition::parse("1||2"), ParseError);    // empty block
    CHECK_THROWS_AS(Partition::parse("1,|2"), ParseError);    // empty element
}

TEST_CASE("stats") {
    CHECK(Partition::parse("1,2,3|4,5|6,7").stats().s == 3);
    auto whole = Partition::single_block(6).stats();
    CHECK(whole.k == 1);
    CHECK(whole.s == 1);
    CHECK(whole.ell == 0);
    auto triv = Partition::parse("1,2|3|4").stats();
    CHECK(triv.k == 3);
    CHECK(triv.s == 1);
    CHECK(triv.ell == 2);
    CHECK_FALSE(triv.nontrivial());
}

TEST_CASE("gap") {
    CHECK(gap_of_set(std::vector<int>{1, 3, 7}) == 4);
    CHECK(gap_of_set(std::vector<int>{4, 5, 6, 7}) == 0);
    CHECK(gap_of_partition(Partition::parse("1,4|2,3")) == 2);
    CHECK_THROWS_AS(gap_of_set(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("gap: congruent sets satisfy the modular lower bound") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int q = 2 + static_cast<int>(rng.below(5));
        int residue = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
        std::vector<int> x;
        for (int v = residue; v <= 60; v += q)
            if (rng.below(2)) x.push_back(v);
        if (x.empty()) continue;
        CHECK(gap_of_set(x) >= (q - 1) * (static_cast<int>(x.size()) - 1));
    }
}

TEST_CASE("standard listing") {
    Partition p = Partition::parse("1,2,3|4,5|6,7");
    std::vector<int> perm_id{1, 2, 3, 4, 5, 6, 7};
    auto l1 = standard_listing(p, perm_id);
    CHECK(l1 == std::vector<std::vector<int>>{{1, 2, 3}, {4, 5}, {6, 7}});

    std::vector<int> perm2{5, 4, 7, 6, 1, 2, 3};
    auto l2 = standard_listing(p, perm2);
    CHECK(l2 == std::vector<std::vector<int>>{{4, 5}, {6, 7}, {1, 2, 3}});

    Partition singles = Partition::discrete(5);
    auto l3 = standard_listing(singles, std::vector<int>{5, 4, 3, 2, 1});
    CHECK(l3 == std::vector<std::vector<int>>{{1}, {2}, {3}, {4}, {5}});
}

TEST_CASE("gap of standard listing splits into big-block gaps") {
    SplitMix64 rng(11);
    int emitted = 0;
    enumerate_all_partitions(7, [&](const Partition& p) {
        ++emitted;
        int big_gap = 0;
        for (const auto& b : p.blocks()) {
            if (b.size() >= 2)
                big_gap += gap_of_set(b);
            else
                CHECK(gap_of_set(b) == 0);
        }
        CHECK(gap_of_partition(p) == big_gap);
    });
    CHECK(emitted == 877); // Bell(7)
    (void)rng;
}

TEST_CASE("enumeration counts and canonical encoding bijection") {
    int count4 = 0;
    enumerate_all_partitions(4, [&](const Partition&) { ++count4; });
    CHECK(count4 == 15); // Bell(4)

    int paired = 0;
    enumerate_all_partitions(
        4, [&](const Partition&) { ++paired; },
        [](const PartitionStats& st) { return st.s >= 2; });
    CHECK(paired == 3); // the three 2+2 pairings

    int two_of_three = 0;
    enumerate_all_partitions(
        3, [&](const Partition&) { ++two_of_three; },
        [](const PartitionStats& st) { return st.k == 2; });
    CHECK(two_of_three == 3);

    // encode/decode identity, k = s + ell, block sizes, exhaustively to n = 8
    for (int n = 1; n <= 8; ++n) {
        std::set<std::vector<int>> rgs_seen;
        long long total = 0;
        enumerate_all_partitions(n, [&](const Partition& p) {
            ++total;
            auto code = p.rgs();
            CHECK(Partition::from_rgs(code) == p);
            CHECK(rgs_seen.insert(code).second);
            auto st = p.stats();
            CHECK(st.k == st.s + st.ell);
            int big_total = 0;
            for (const auto& b : p.blocks())
                if (b.size() >= 2) big_total += static_cast<int>(b.size());
            CHECK(p.n() == st.ell + big_total);
        });
        static const long long bell[] = {0, 1, 2, 5, 15, 52, 203, 877, 4140};
        CHECK(total == bell[n]);
    }
}

TEST_CASE("enumeration guard") {
    CHECK_THROWS_AS(enumerate_all_partitions(13, [](const Partition&) {}), GuardError);
}

TEST_SUITE_END();
