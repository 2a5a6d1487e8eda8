#include <doctest.h>

#include <set>

#include "ccx/caterpillar.hpp"
#include "ccx/errors.hpp"
#include "ccx/rng.hpp"

using namespace ccx;

TEST_SUITE_BEGIN("caterpillar");

TEST_CASE("canonical form") {
    CHECK(canonical_caterpillar(std::vector<int>{4, 3, 2, 1}).perm() ==
          std::vector<int>{1, 2, 3, 4});
    CHECK(canonical_caterpillar(std::vector<int>{1, 2, 3, 4}).perm() ==
          std::vector<int>{1, 2, 3, 4});
    // idempotence
    Caterpillar c(std::vector<int>{3, 1, 4, 2, 5});
    CHECK(c.canonical().canonical() == c.canonical());
    // lexicographic minimum of the explicit orbit
    auto orbit = caterpillar_orbit(c);
    Caterpillar least = orbit.front();
    for (const auto& o : orbit)
        if (o < least) least = o;
    CHECK(c.canonical() == least);
}

TEST_CASE("orbit size is exactly 8 for n >= 4") {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 4 + static_cast<int>(rng.below(8));
        auto orbit = caterpillar_orbit(random_permutation(n, rng.next()));
        CHECK(orbit.size() == 8);
    }
    CHECK(caterpillar_orbit(Caterpillar::identity(3)).size() == 6);
    CHECK(caterpillar_orbit(Caterpillar::identity(2)).size() == 2);
    CHECK(caterpillar_orbit(Caterpillar::identity(1)).size() == 1);
}

TEST_CASE("caterpillar trees and symmetry") {
    Tree t7 = caterpillar_tree(Caterpillar::identity(7));
    CHECK(t7.leaf_count() == 7);
    CHECK(write_newick(t7) == "(1,2,(3,(4,(5,(6,7)))));");

    CHECK(trees_isomorphic(caterpillar_tree(Caterpillar(std::vector<int>{4, 3, 2, 1})),
                           caterpillar_tree(Caterpillar::identity(4))));
    CHECK(trees_isomorphic(caterpillar_tree(Caterpillar(std::vector<int>{2, 1, 3, 4, 5})),
                           caterpillar_tree(Caterpillar::identity(5))));
}

TEST_CASE("as_permutation inverts caterpillar_tree") {
    // exhaustive over all permutations for n <= 7
    for (int n = 1; n <= 7; ++n) {
        std::vector<int> p(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i + 1;
        do {
            Caterpillar c(p);
            auto back = as_permutation(caterpillar_tree(c));
            REQUIRE(back.has_value());
            CHECK(*back == c.canonical());
        } while (std::next_permutation(p.begin(), p.end()));
    }
}

TEST_CASE("as_permutation rejects non-caterpillars") {
    Tree r = parse_newick("((1,2),((6,7),(3,(4,5))));");
    CHECK_FALSE(as_permutation(r).has_value());
    // Fig-style left caterpillar comes back as the identity class
    Tree l = parse_newick("(1,2,(3,(4,(5,(6,7)))));");
    REQUIRE(as_permutation(l).has_value());
    CHECK(*as_permutation(l) == Caterpillar::identity(7).canonical());
    // every tree on up to 3 leaves is the unique caterpillar
    CHECK(as_permutation(parse_newick("(1,2,3);")).has_value());
}

TEST_CASE("round trip through newick text") {
    Caterpillar c(std::vector<int>{2, 7, 1, 4, 6, 3, 5});
    Tree t = caterpillar_tree(c);
    Tree back = parse_newick(write_newick(t));
    auto perm = as_permutation(back);
    REQUIRE(perm.has_value());
    CHECK(*perm == c.canonical());
}

TEST_CASE("canonical enumeration") {
    int count4 = 0, count5 = 0;
    enumerate_canonical_caterpillars(4, [&](const Caterpillar&) { ++count4; });
    enumerate_canonical_caterpillars(5, [&](const Caterpillar&) { ++count5; });
    CHECK(count4 == 3);
    CHECK(count5 == 15);
    CHECK(canonical_caterpillar_count(4) == 3);
    CHECK(canonical_caterpillar_count(5) == 15);
    CHECK(canonical_caterpillar_count(9) == 45360);

    // the fast membership rule agrees with the orbit-closure definition
    for (int n = 4; n <= 7; ++n) {
        std::set<Caterpillar> canon;
        std::vector<int> p(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i + 1;
        do {
            Caterpillar c(p);
            if (c.is_canonical()) canon.insert(c);
        } while (std::next_permutation(p.begin(), p.end()));
        std::vector<Caterpillar> enumerated;
        enumerate_canonical_caterpillars(n, [&](const Caterpillar& c) { enumerated.push_back(c); });
        CHECK(enumerated.size() == canon.size());
        CHECK(std::set<Caterpillar>(enumerated.begin(), enumerated.end()) == canon);
        CHECK(enumerated.size() == canonical_caterpillar_count(n));
    }

    CHECK_THROWS_AS(enumerate_canonical_caterpillars(12, [](const Caterpillar&) {}), GuardError);
}

TEST_CASE("random permutations are reproducible") {
    CHECK(random_permutation(20, 7) == random_permutation(20, 7));
    CHECK(random_permutation(20, 7) != random_permutation(20, 8));
    // spot check uniformity at n=3: each of 6 permutations should appear
    std::set<std::vector<int>> seen;
    for (int s = 0; s < 200; ++s) seen.insert(random_permutation(3, static_cast<std::uint64_t>(s)).perm());
    CHECK(seen.size() == 6);
}

TEST_CASE("permutation parsing") {
    CHECK(Caterpillar::parse("5 3 1 7 6 2 4").perm() == std::vector<int>{5, 3, 1, 7, 6, 2, 4});
    CHECK(Caterpillar::parse("2,1,3").perm() == std::vector<int>{2, 1, 3});
    CHECK_THROWS_AS(Caterpillar::parse("1 2 2"), ParseError);
    CHECK_THROWS_AS(Caterpillar::parse("1 3"), ParseError);
}

TEST_SUITE_END();
