#pragma once

// Named posets used as fixtures: standard examples, Kelly's planar posets,
// the 1- and 2-element subsets of [n] with their star decomposition, and a
// seeded generator of bounded-height posets with a matching decomposition.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poset.hpp"
#include "tree_decomposition.hpp"

namespace posetdim {

struct NamedConstruction {
    Poset poset;
    std::optional<TreeDecomposition> decomposition;
};

/// S_d: a_1..a_d (indices 0..d-1) and b_1..b_d (d..2d-1), a_i < b_j iff i != j.
inline NamedConstruction standard_example(std::size_t d) {
    if (d < 2) throw DomainError("standard example needs d >= 2");
    std::vector<Arc> arcs;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < d; ++i) labels.push_back("a" + std::to_string(i + 1));
    for (std::size_t i = 0; i < d; ++i) labels.push_back("b" + std::to_string(i + 1));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (i != j) arcs.emplace_back(i, d + j);
    return {Poset::from_relations(2 * d, arcs, std::move(labels)), std::nullopt};
}

/// Index layout of kelly(n): a_i, b_i, z_i, w_i (1-based i) in that block order.
struct KellyLayout {
    std::size_t n;
    Element a(std::size_t i) const { return i - 1; }
    Element b(std::size_t i) const { return n + i - 1; }
    Element z(std::size_t i) const { return 2 * n + i - 1; }
    Element w(std::size_t i) const { return 3 * n - 1 + i - 1; }
    std::size_t size() const { return 4 * n - 2; }
};

/// Kelly's planar poset containing S_n. Covers: a_i < z_i < z_{i+1},
/// z_i < b_{i+1}, a_{i+1} < w_i, w_{i+1} < w_i, w_i < b_i.
inline NamedConstruction kelly(std::size_t n) {
    if (n < 3) throw DomainError("Kelly's construction needs n >= 3");
    const KellyLayout k{n};
    std::vector<Arc> arcs;
    std::vector<std::string> labels(k.size());
    for (std::size_t i = 1; i <= n; ++i) {
        labels[k.a(i)] = "a" + std::to_string(i);
        labels[k.b(i)] = "b" + std::to_string(i);
    }
    for (std::size_t i = 1; i < n; ++i) {
        labels[k.z(i)] = "z" + std::to_string(i);
        labels[k.w(i)] = "w" + std::to_string(i);
        arcs.emplace_back(k.a(i), k.z(i));
        arcs.emplace_back(k.z(i), k.b(i + 1));
        arcs.emplace_back(k.a(i + 1), k.w(i));
        arcs.emplace_back(k.w(i), k.b(i));
        if (i + 1 < n) {
            arcs.emplace_back(k.z(i), k.z(i + 1));
            arcs.emplace_back(k.w(i + 1), k.w(i));
        }
    }
    NamedConstruction c{Poset::from_relations(k.size(), arcs, std::move(labels)), std::nullopt};
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            if (c.poset.lt(k.a(i), k.b(j)) != (i != j) || c.poset.lt(k.b(j), k.a(i)))
                throw InternalError("Kelly schema does not contain the standard example");
    return c;
}

/// Singletons {i} at indices 0..n-1, then pairs {i,j} (i<j) in lexicographic order.
inline std::size_t dm_pair_index(std::size_t n, std::size_t i, std::size_t j) {
    std::size_t idx = n;
    for (std::size_t a = 0; a < i; ++a) idx += n - 1 - a;
    return idx + (j - i - 1);
}

/// 1- and 2-element subsets of {1..n} under inclusion, with the star
/// decomposition: center bag of all singletons (bag 0) and one leaf bag
/// {{i},{j},{i,j}} per pair.
inline NamedConstruction dm_subsets(std::size_t n) {
    if (n < 3) throw DomainError("subset poset needs n >= 3");
    std::vector<Arc> arcs;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("{" + std::to_string(i + 1) + "}");
    TreeDecomposition t;
    t.vertex_count = n + n * (n - 1) / 2;
    t.bags.emplace_back();
    for (std::size_t i = 0; i < n; ++i) t.bags[0].push_back(i);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Element pair = dm_pair_index(n, i, j);
            labels.push_back("{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}");
            arcs.emplace_back(i, pair);
            arcs.emplace_back(j, pair);
            t.bags.push_back({i, j, pair});
            t.edges.emplace_back(0, t.bags.size() - 1);
        }
    return {Poset::from_relations(t.vertex_count, arcs, std::move(labels)), std::move(t)};
}

struct RandomPosetKnobs {
    std::size_t max_bag_size = 4;
    std::size_t max_adhesion = 2;
    double arc_probability = 0.5;
};

/// Grows a bag tree first (each new bag shares at most `max_adhesion`
/// vertices with its parent), gives every vertex a level below
/// `target_height`, and samples arcs from lower to higher level only inside
/// bags. The decomposition is valid and the height is at most the target.
inline NamedConstruction random_poset(std::uint64_t seed, std::size_t n, std::size_t target_height,
                                      const RandomPosetKnobs& knobs = {}) {
    if (target_height == 0 && n > 0) throw DomainError("height must be positive");
    if (knobs.max_bag_size < 1) throw DomainError("bags need at least one vertex");
    std::mt19937_64 rng(seed);
    auto uniform = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    TreeDecomposition t;
    t.vertex_count = n;
    std::size_t used = 0;
    while (used < n) {
        const std::size_t size = uniform(std::min<std::size_t>(2, knobs.max_bag_size), knobs.max_bag_size);
        std::vector<Element> bag;
        if (!t.bags.empty()) {
            const BagId parent = uniform(0, t.bags.size() - 1);
            auto pool = t.bags[parent];
            std::shuffle(pool.begin(), pool.end(), rng);
            const std::size_t cap = std::min({knobs.max_adhesion, pool.size(), size - 1});
            const std::size_t share = uniform(std::min<std::size_t>(1, cap), cap);
            bag.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(share));
            t.edges.emplace_back(parent, t.bags.size());
        }
        const std::size_t fresh = std::min(std::max<std::size_t>(1, size - bag.size()), n - used);
        for (std::size_t i = 0; i < fresh; ++i) bag.push_back(used++);
        std::sort(bag.begin(), bag.end());
        t.bags.push_back(std::move(bag));
    }
    std::vector<std::size_t> level(n);
    for (auto& l : level) l = uniform(0, target_height - 1);
    std::bernoulli_distribution coin(knobs.arc_probability);
    std::vector<Arc> arcs;
    for (const auto& bag : t.bags)
        for (Element u : bag)
            for (Element v : bag)
                if (level[u] < level[v] && coin(rng)) arcs.emplace_back(u, v);
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    return {Poset::from_relations(n, arcs), std::move(t)};
}

/// Random order on n elements: arcs i -> j (i < j in a shuffled labeling)
/// with the given probability.
inline Poset random_dag_poset(std::uint64_t seed, std::size_t n, double density) {
    std::mt19937_64 rng(seed);
    std::vector<Element> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution coin(density);
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng)) arcs.emplace_back(perm[i], perm[j]);
    return Poset::from_relations(n, arcs);
}

}  // namespace posetdim
