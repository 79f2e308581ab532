#pragma once

// Brute-force reference implementations shared by the test suites. None of
// these call into the library code they check beyond Poset accessors.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <posetdim/poset.hpp>

namespace testing_support {

using posetdim::Arc;
using posetdim::Element;
using posetdim::IncPair;
using posetdim::Poset;

/// Floyd-Warshall closure of an arc list; returns lt as a dense matrix.
inline std::vector<std::vector<bool>> closure(std::size_t n, const std::vector<Arc>& arcs) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (const auto& [u, v] : arcs) r[u][v] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (r[k][j]) r[i][j] = true;
    return r;
}

/// Every labeled strict partial order on n <= 4 elements.
inline std::vector<Poset> all_posets(std::size_t n) {
    std::vector<Arc> slots;
    for (Element i = 0; i < n; ++i)
        for (Element j = 0; j < n; ++j)
            if (i != j) slots.emplace_back(i, j);
    std::vector<Poset> out;
    for (std::uint32_t mask = 0; mask < (1U << slots.size()); ++mask) {
        std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
        std::vector<Arc> arcs;
        for (std::size_t b = 0; b < slots.size(); ++b)
            if ((mask >> b) & 1U) {
                r[slots[b].first][slots[b].second] = true;
                arcs.push_back(slots[b]);
            }
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j) {
                if (r[i][j] && r[j][i]) ok = false;
                for (std::size_t k = 0; k < n && ok; ++k)
                    if (r[i][j] && r[j][k] && !r[i][k]) ok = false;
            }
        if (ok) out.push_back(Poset::from_relations(n, arcs));
    }
    return out;
}

inline Poset random_small_poset(std::mt19937_64& rng, std::size_t n, double density) {
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

/// All linear extensions as position vectors, via next_permutation.
inline std::vector<std::vector<std::size_t>> extension_positions(const Poset& p) {
    std::vector<Element> perm(p.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::vector<std::vector<std::size_t>> out;
    do {
        std::vector<std::size_t> pos(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = i;
        bool ok = true;
        for (Element x = 0; x < p.size() && ok; ++x)
            for (Element y = 0; y < p.size() && ok; ++y)
                if (p.lt(x, y) && pos[x] > pos[y]) ok = false;
        if (ok) out.push_back(std::move(pos));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Some linear extension puts y below x for every (x,y) of `pairs`.
inline bool reversible(const std::vector<std::vector<std::size_t>>& exts, const std::vector<IncPair>& pairs) {
    return std::any_of(exts.begin(), exts.end(), [&](const auto& pos) {
        return std::all_of(pairs.begin(), pairs.end(),
                           [&](const IncPair& q) { return pos[q.second] < pos[q.first]; });
    });
}

}  // namespace testing_support
