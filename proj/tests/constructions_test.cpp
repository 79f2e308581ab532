#include <gtest/gtest.h>

#include <set>

#include <posetdim/constructions.hpp>
#include <posetdim/solver.hpp>
#include <posetdim/tree_decomposition.hpp>

using namespace posetdim;

TEST(StandardExample, Sizes) {
    const auto s2 = standard_example(2).poset;
    EXPECT_EQ(s2.size(), 4u);
    std::size_t comparabilities = 0;
    for (Element x = 0; x < 4; ++x) comparabilities += s2.above(x).count();
    EXPECT_EQ(comparabilities, 2u);
    EXPECT_THROW(standard_example(1), DomainError);
}

TEST(StandardExample, FiveMatchesRule) {
    const auto p = standard_example(5).poset;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            EXPECT_EQ(p.lt(i, 5 + j), i != j);
            EXPECT_FALSE(p.lt(5 + j, i));
        }
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            EXPECT_FALSE(p.comparable(i, j) && i != j);
            EXPECT_FALSE(p.comparable(5 + i, 5 + j) && i != j);
        }
}

TEST(StandardExample, EveryElementExtremalHeightTwo) {
    for (std::size_t d = 2; d <= 6; ++d) {
        const auto p = standard_example(d).poset;
        for (Element x = 0; x < p.size(); ++x) EXPECT_TRUE(p.is_minimal(x) || p.is_maximal(x));
        EXPECT_EQ(height(p), 2u);
    }
}

TEST(StandardExample, ThreeHasDimensionThree) { EXPECT_EQ(exact_dimension(standard_example(3).poset).dimension, 3u); }

TEST(Kelly, FiveCoverEdges) {
    const auto c = kelly(5);
    const KellyLayout k{5};
    const auto g = cover_graph(c.poset);
    std::set<Arc> expected;
    for (std::size_t i = 1; i <= 5; ++i) {
        if (i < 5) {
            expected.insert({k.a(i), k.z(i)});
            expected.insert({k.z(i), k.b(i + 1)});
            expected.insert({k.a(i + 1), k.w(i)});
            expected.insert({k.w(i), k.b(i)});
        }
        if (i + 1 < 5) {
            expected.insert({k.z(i), k.z(i + 1)});
            expected.insert({k.w(i + 1), k.w(i)});
        }
    }
    EXPECT_EQ(std::set<Arc>(g.edges.begin(), g.edges.end()), expected);
    EXPECT_EQ(g.edges.size(), 22u);
}

TEST(Kelly, ContainsStandardExample) {
    for (std::size_t n = 3; n <= 8; ++n) {
        const auto p = kelly(n).poset;
        const KellyLayout k{n};
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; j <= n; ++j) EXPECT_EQ(p.lt(k.a(i), k.b(j)), i != j);
        std::vector<Element> ab;
        for (std::size_t i = 1; i <= n; ++i) ab.push_back(k.a(i));
        for (std::size_t i = 1; i <= n; ++i) ab.push_back(k.b(i));
        EXPECT_TRUE(induced_subposet(p, std::span<const Element>(ab)).poset.same_order(standard_example(n).poset));
    }
    EXPECT_THROW(kelly(2), DomainError);
}

TEST(Kelly, ThreeHasDimensionAtLeastThree) { EXPECT_GE(exact_dimension(kelly(3).poset).dimension, 3u); }

TEST(DmSubsets, ThreeShape) {
    const auto c = dm_subsets(3);
    EXPECT_EQ(c.poset.size(), 6u);
    EXPECT_EQ(cover_graph(c.poset).edges.size(), 6u);
    ASSERT_TRUE(c.decomposition);
    const auto& t = *c.decomposition;
    EXPECT_EQ(t.bag_count(), 4u);
    EXPECT_EQ(t.neighbors()[0].size(), 3u);
    const auto v = validate(t, cover_graph(c.poset));
    EXPECT_TRUE(v.valid) << v.reason;
    EXPECT_EQ(v.adhesion, 2u);
    EXPECT_THROW(dm_subsets(2), DomainError);
}

TEST(DmSubsets, InclusionOrder) {
    for (std::size_t n = 3; n <= 6; ++n) {
        const auto p = dm_subsets(n).poset;
        EXPECT_EQ(p.size(), n + n * (n - 1) / 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const Element pair = dm_pair_index(n, i, j);
                for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(p.lt(k, pair), k == i || k == j);
                EXPECT_TRUE(p.is_maximal(pair));
            }
    }
}

TEST(DmSubsets, LeafBagsHaveDimensionTwo) {
    for (std::size_t n = 3; n <= 5; ++n) {
        const auto c = dm_subsets(n);
        for (BagId b = 1; b < c.decomposition->bag_count(); ++b) {
            const auto sub = induced_subposet(c.poset, std::span<const Element>(c.decomposition->bags[b]));
            EXPECT_EQ(exact_dimension(sub.poset).dimension, 2u);
        }
    }
}

TEST(DmSubsets, FiveHasDimensionAtLeastThree) { EXPECT_GE(exact_dimension(dm_subsets(5).poset).dimension, 3u); }

TEST(DmSubsets, DecompositionValidAdhesionTwo) {
    for (std::size_t n = 3; n <= 7; ++n) {
        const auto c = dm_subsets(n);
        const auto v = validate(*c.decomposition, cover_graph(c.poset));
        EXPECT_TRUE(v.valid);
        EXPECT_EQ(v.adhesion, 2u);
    }
}

TEST(RandomPoset, HeightBoundAndValidDecomposition) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 5 + seed % 30, h = 1 + seed % 4;
        const auto c = random_poset(seed, n, h);
        EXPECT_EQ(c.poset.size(), n);
        EXPECT_LE(height(c.poset), h);
        const auto v = validate(*c.decomposition, cover_graph(c.poset));
        EXPECT_TRUE(v.valid) << v.reason;
        EXPECT_LE(v.adhesion, 2u);
        EXPECT_LE(c.decomposition->width(), 3u);
    }
    EXPECT_LE(height(random_poset(0, 10, 2).poset), 2u);
}

TEST(RandomPoset, Deterministic) {
    const auto a = random_poset(42, 20, 3), b = random_poset(42, 20, 3);
    EXPECT_TRUE(a.poset.same_order(b.poset));
    EXPECT_EQ(*a.decomposition, *b.decomposition);
}

TEST(RandomPoset, KnobsRespected) {
    RandomPosetKnobs knobs;
    knobs.max_bag_size = 3;
    knobs.max_adhesion = 1;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto c = random_poset(seed, 25, 3, knobs);
        const auto v = validate(*c.decomposition, cover_graph(c.poset));
        EXPECT_TRUE(v.valid);
        EXPECT_LE(v.adhesion, 1u);
        EXPECT_LE(c.decomposition->width(), 2u);
    }
}
