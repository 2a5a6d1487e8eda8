#include <doctest.h>

#include "ccx/caterpillar.hpp"
#include "ccx/errors.hpp"
#include "ccx/rng.hpp"
#include "ccx/tree.hpp"

using namespace ccx;

TEST_SUITE_BEGIN("tree");

TEST_CASE("newick parse accepts trifurcating and rooted binary forms") {
    Tree t = parse_newick("(1,2,(3,(4,(5,(6,7)))));");
    CHECK(t.leaf_count() == 7);
    CHECK(trees_isomorphic(t, caterpillar_tree(Caterpillar::identity(7))));

    Tree q = parse_newick("((1,2),(3,4));");
    CHECK(q.leaf_count() == 4);
    CHECK(trees_isomorphic(q, caterpillar_tree(Caterpillar::identity(4))));

    Tree r = parse_newick("((1,2),((6,7),(3,(4,5))));");
    CHECK(r.leaf_count() == 7);
    CHECK_FALSE(as_permutation(r).has_value());

    CHECK(parse_newick("1;").leaf_count() == 1);
    CHECK(parse_newick("(1,2);").leaf_count() == 2);
    CHECK(parse_newick("(1:0.5,2:1e-3,(3:2,4):0.1);").leaf_count() == 4); // lengths ignored
}

TEST_CASE("newick parse rejects bad input") {
    CHECK_THROWS_AS(parse_newick("(1,2,(3,4)"), ParseError);        // missing ');'
    CHECK_THROWS_AS(parse_newick("(1,2,3,4);"), ParseError);        // quadrifurcation
    CHECK_THROWS_AS(parse_newick("((1,2,3),(4,5));"), ParseError);  // internal trifurcation
    CHECK_THROWS_AS(parse_newick("(1,2,(3,4))x;"), ParseError);     // internal label
    CHECK_THROWS_AS(parse_newick("(1,2,(3,3));"), ParseError);      // duplicate leaf
    CHECK_THROWS_AS(parse_newick("(1,2,(3,5));"), ParseError);      // missing label 4
    CHECK_THROWS_AS(parse_newick("(a,b,(c,d));"), ParseError);      // names without a map
}

TEST_CASE("newick write is canonical") {
    CHECK(write_newick(caterpillar_tree(Caterpillar::identity(4))) == "(1,2,(3,4));");
    Tree two;
    {
        int a = two.add_vertex(2), b = two.add_vertex(1);
        two.add_edge(a, b);
    }
    CHECK(write_newick(two) == "(1,2);");
    CHECK(write_newick(caterpillar_tree(Caterpillar::identity(7))) ==
          "(1,2,(3,(4,(5,(6,7)))));");
}

TEST_CASE("newick round trip on random trees") {
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(SplitMix64(trial).below(29)); // up to 30
        Tree t = random_tree(n, static_cast<std::uint64_t>(trial) + 1000);
        Tree back = parse_newick(write_newick(t));
        CHECK(trees_isomorphic(t, back));
        CHECK(write_newick(back) == write_newick(t));
    }
}

TEST_CASE("taxon maps") {
    TaxonMap taxa = TaxonMap::parse_tsv("human\t1\nchimp\t2\ngorilla\t3\norang\t4\n");
    Tree t = parse_newick("((human,chimp),(gorilla,orang));", &taxa);
    CHECK(t.leaf_count() == 4);
    CHECK(write_newick(t, &taxa) == "(human,chimp,(gorilla,orang));");
    CHECK_THROWS_AS(parse_newick("((human,chimp),(gorilla,rhesus));", &taxa), ParseError);
    CHECK_THROWS_AS(TaxonMap::parse_tsv("a\t1\nb\t3\n"), ParseError); // missing index 2
}

TEST_CASE("random trees satisfy the structural invariants") {
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + static_cast<int>(SplitMix64(trial, 9).below(20));
        Tree t = random_tree(n, static_cast<std::uint64_t>(trial));
        t.validate(); // throws on violation
        CHECK(t.leaf_count() == n);
        if (n >= 2) CHECK(t.vertex_count() == 2 * n - 2);
    }
    CHECK(write_newick(random_tree(12, 5)) == write_newick(random_tree(12, 5)));
}

TEST_CASE("restriction") {
    Tree t7 = caterpillar_tree(Caterpillar::identity(7));
    Tree q = restrict_to(t7, std::vector<int>{1, 2, 6, 7});
    // the split must be 12|67
    auto splits = nontrivial_splits(q);
    CHECK(splits == std::set<std::vector<int>>{{6, 7}});

    Tree r = parse_newick("((1,2),((6,7),(3,(4,5))));");
    Tree q2 = restrict_to(r, std::vector<int>{1, 2, 4, 5});
    CHECK(nontrivial_splits(q2) == std::set<std::vector<int>>{{4, 5}});

    CHECK(trees_isomorphic(restrict_to(t7, t7.leaf_labels()), t7));
    CHECK_THROWS_AS(restrict_to(t7, std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("restriction is functorial") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 5 + static_cast<int>(rng.below(8)); // up to 12
        Tree t = random_tree(n, rng.next());
        std::vector<int> y, z;
        for (int v = 1; v <= n; ++v) {
            int r = static_cast<int>(rng.below(3));
            if (r >= 1) y.push_back(v);
            if (r >= 2) z.push_back(v); // z ⊆ y
        }
        if (z.empty()) continue;
        Tree via_y = restrict_to(restrict_to(t, y), z);
        Tree direct = restrict_to(t, z);
        CHECK(trees_isomorphic(via_y, direct));
    }
}

TEST_CASE("relabel and splits") {
    Tree t = caterpillar_tree(Caterpillar::identity(5));
    std::vector<int> sigma{0, 3, 1, 4, 2, 5}; // 1->3, 2->1, ...
    Tree s = relabel(t, sigma);
    CHECK(s.leaf_count() == 5);
    CHECK_FALSE(trees_isomorphic(t, s));
    CHECK(nontrivial_splits(t) ==
          std::set<std::vector<int>>{{3, 4, 5}, {4, 5}});
}

TEST_SUITE_END();
