#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "evograph/ted.hpp"
#include "support/oracles.hpp"

using namespace evograph;

namespace {
const std::vector<std::string> kAlphabet = {"a", "b", "c"};
}

TEST_CASE("identity and single relabel") {
    DepTree a{"a", {{"b", {}}, {"c", {}}}};
    CHECK(tree_edit_distance(a, a) == 0);

    DepTree x{"a", {}};
    DepTree y{"b", {}};
    CHECK(tree_edit_distance(x, y) == 1);
}

TEST_CASE("insertions and deletions") {
    DepTree small{"a", {}};
    DepTree big{"a", {{"b", {}}, {"c", {}}}};
    CHECK(tree_edit_distance(small, big) == 2);
    CHECK(tree_edit_distance(big, small) == 2);

    DepTree empty_vs{"a", {{"b", {{"c", {}}}}}};
    CHECK(tree_edit_distance(small, empty_vs) == 2);
}

TEST_CASE("sibling order matters for ordered trees") {
    DepTree ab{"r", {{"a", {}}, {"b", {}}}};
    DepTree ba{"r", {{"b", {}}, {"a", {}}}};
    CHECK(tree_edit_distance(ab, ba) == oracle::ted_exhaustive(ab, ba));
    CHECK(tree_edit_distance(ab, ba) > 0);
}

TEST_CASE("matches the exhaustive-mapping oracle on random small trees") {
    SplitMix64 rng(20240817);
    for (int i = 0; i < 300; ++i) {
        DepTree a = oracle::random_tree(rng, 6, kAlphabet);
        DepTree b = oracle::random_tree(rng, 6, kAlphabet);
        int fast = tree_edit_distance(a, b);
        int brute = oracle::ted_exhaustive(a, b);
        CHECK(fast == brute);
    }
}

TEST_CASE("metric properties on sampled trees") {
    SplitMix64 rng(99);
    std::vector<DepTree> trees;
    for (int i = 0; i < 24; ++i) trees.push_back(oracle::random_tree(rng, 6, kAlphabet));

    for (const auto& t : trees) CHECK(tree_edit_distance(t, t) == 0);

    for (size_t i = 0; i < trees.size(); ++i) {
        for (size_t j = i + 1; j < trees.size(); ++j) {
            CHECK(tree_edit_distance(trees[i], trees[j]) ==
                  tree_edit_distance(trees[j], trees[i]));
        }
    }

    for (int k = 0; k < 200; ++k) {
        const auto& a = trees[static_cast<size_t>(rng.below(trees.size()))];
        const auto& b = trees[static_cast<size_t>(rng.below(trees.size()))];
        const auto& c = trees[static_cast<size_t>(rng.below(trees.size()))];
        CHECK(tree_edit_distance(a, c) <=
              tree_edit_distance(a, b) + tree_edit_distance(b, c));
    }
}

TEST_CASE("normalization divides by the larger node count") {
    DepTree a{"x", {}};
    DepTree b{"y", {{"z", {}}}};
    // Distance 2 (relabel + insert), max nodes 2.
    CHECK(normalized_tree_edit_distance(a, b) == doctest::Approx(1.0));
    CHECK(normalized_tree_edit_distance(a, a) == doctest::Approx(0.0));
}
