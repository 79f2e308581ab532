#include <gtest/gtest.h>

#include <random>

#include <posetdim/constructions.hpp>
#include <posetdim/solver.hpp>

#include "support.hpp"

using namespace posetdim;
namespace ts = testing_support;

namespace {

Poset chain(std::size_t k) {
    std::vector<Arc> arcs;
    for (Element i = 0; i + 1 < k; ++i) arcs.emplace_back(i, i + 1);
    return Poset::from_relations(k, arcs);
}

Poset antichain(std::size_t k) { return Poset::from_relations(k, {}); }

// Smallest k such that some k extensions jointly reverse every pair of Inc(P),
// by plain subset search over extension index tuples.
std::size_t brute_dimension(const Poset& p) {
    const auto inc = incomparable_pairs(p);
    if (inc.empty()) return 1;
    const auto exts = ts::extension_positions(p);
    for (std::size_t k = 1;; ++k) {
        std::vector<std::size_t> pick(k, 0);
        while (true) {
            bool ok = true;
            for (const auto& q : inc) {
                bool rev = false;
                for (std::size_t i : pick) rev = rev || exts[i][q.second] < exts[i][q.first];
                if (!rev) {
                    ok = false;
                    break;
                }
            }
            if (ok) return k;
            std::size_t pos = 0;
            while (pos < k && ++pick[pos] == exts.size()) pick[pos++] = 0;
            if (pos == k) break;
        }
    }
}

void expect_witness_valid(const Poset& p, const DimensionResult& r) {
    const auto v = is_valid_coloring(p, r.witness);
    ASSERT_TRUE(v.valid);
    if (!incomparable_pairs(p).empty()) {
        EXPECT_EQ(r.witness.color_count(), r.dimension);
        EXPECT_EQ(realizer_from_coloring(p, r.witness).size(), r.dimension);
    }
}

}  // namespace

TEST(ExactDimension, Examples) {
    EXPECT_EQ(exact_dimension(chain(4)).dimension, 1u);
    const auto s4 = standard_example(4).poset;
    const auto r = exact_dimension(s4);
    EXPECT_EQ(r.dimension, 4u);
    expect_witness_valid(s4, r);
    EXPECT_EQ(exact_dimension(antichain(3)).dimension, 2u);
    EXPECT_EQ(brute_dimension(antichain(3)), 2u);
    EXPECT_EQ(exact_dimension(Poset{}).dimension, 1u);
}

TEST(ExactDimension, StandardExamples) {
    for (std::size_t d = 2; d <= 6; ++d) {
        const auto p = standard_example(d).poset;
        const auto r = exact_dimension(p);
        EXPECT_EQ(r.dimension, d);
        expect_witness_valid(p, r);
    }
}

TEST(ExactDimension, MaxDCapRaisesBudgetExceeded) {
    SolverOptions opt;
    opt.max_d = 2;
    EXPECT_THROW(exact_dimension(standard_example(3).poset, opt), BudgetExceeded);
    opt.max_d = 3;
    EXPECT_EQ(exact_dimension(standard_example(3).poset, opt).dimension, 3u);
    opt.max_d = 1;
    EXPECT_THROW(exact_dimension(antichain(2), opt), BudgetExceeded);
}

TEST(ExactDimension, NodeBudgetRaisesBudgetExceeded) {
    SolverOptions opt;
    opt.node_budget = 1;
    EXPECT_THROW(exact_dimension(standard_example(4).poset, opt), BudgetExceeded);
}

TEST(ExactDimension, TwinsAndComponentsKeepDimension) {
    // S_3 plus a twin of a1 plus an isolated point.
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) arcs.emplace_back(i, 3 + j);
    arcs.emplace_back(6, 4);
    arcs.emplace_back(6, 5);
    const auto p = Poset::from_relations(8, arcs);
    const auto r = exact_dimension(p);
    EXPECT_EQ(r.dimension, 3u);
    expect_witness_valid(p, r);

    const std::vector<Arc> two_chains{{0, 1}, {2, 3}};
    const auto q = Poset::from_relations(4, two_chains);
    const auto rq = exact_dimension(q);
    EXPECT_EQ(rq.dimension, 2u);
    expect_witness_valid(q, rq);
}

TEST(HasValidColoring, Examples) {
    const auto s3 = standard_example(3).poset;
    EXPECT_FALSE(has_valid_coloring(s3, 2).has_value());
    const auto c = has_valid_coloring(s3, 3);
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(is_valid_coloring(s3, *c).valid);
    const auto e = has_valid_coloring(chain(5), 1);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->assigned(), 0u);
    EXPECT_THROW(has_valid_coloring(s3, 0), DomainError);
}

TEST(OracleDimension, Examples) {
    EXPECT_EQ(oracle_dimension(standard_example(2).poset), 2u);
    EXPECT_EQ(brute_dimension(standard_example(2).poset), 2u);
    EXPECT_EQ(oracle_dimension(antichain(2)), 2u);
    EXPECT_EQ(oracle_dimension(chain(3)), 1u);
    EXPECT_THROW(oracle_dimension(antichain(8)), DomainError);
}

TEST(AllLinearExtensions, CountsMatchPermutationFilter) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 40; ++trial) {
        const auto p = ts::random_small_poset(rng, 1 + trial % 6, 0.4);
        EXPECT_EQ(all_linear_extensions(p).size(), ts::extension_positions(p).size());
    }
}

TEST(ExactDimension, AgreesWithOracleOnAllSmallPosets) {
    for (std::size_t n = 0; n <= 4; ++n)
        for (const auto& p : ts::all_posets(n)) {
            const auto r = exact_dimension(p);
            ASSERT_EQ(r.dimension, oracle_dimension(p));
            ASSERT_EQ(r.dimension, brute_dimension(p));
            expect_witness_valid(p, r);
        }
}

TEST(ExactDimension, AgreesWithOracleOnRandomPosets) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 5 + trial % 3;
        const auto p = ts::random_small_poset(rng, n, 0.15 + 0.1 * (trial % 5));
        const auto r = exact_dimension(p);
        ASSERT_EQ(r.dimension, oracle_dimension(p)) << "trial " << trial;
        expect_witness_valid(p, r);
    }
}

TEST(ExactDimension, MonotoneUnderInducedSubposets) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const auto p = ts::random_small_poset(rng, 9, 0.3);
        const std::size_t d = exact_dimension(p).dimension;
        for (int k = 0; k < 5; ++k) {
            Bitset keep(p.size());
            for (Element x = 0; x < p.size(); ++x)
                if (rng() % 3) keep.set(x);
            EXPECT_LE(exact_dimension(induced_subposet(p, keep).poset).dimension, d);
        }
    }
}

TEST(ExactDimension, DeterministicWitness) {
    const auto p = kelly(3).poset;
    EXPECT_EQ(exact_dimension(p).witness, exact_dimension(p).witness);
}

TEST(CriticalPairs, ReversingThemReversesEverything) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = ts::random_small_poset(rng, 6, 0.3);
        const auto crit = critical_pairs(p);
        // Every incomparable pair dominates some critical pair: x' <= x, y <= y'.
        for (const auto& q : incomparable_pairs(p)) {
            bool dominated = false;
            for (const auto& c : crit)
                if (p.le(c.first, q.first) && p.le(q.second, c.second)) dominated = true;
            EXPECT_TRUE(dominated);
        }
    }
}
