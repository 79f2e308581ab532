#pragma once

// Exact poset dimension as a minimum partition of the incomparable pairs into
// alternating-cycle-free classes, plus a brute-force oracle over linear
// extensions for small posets.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "errors.hpp"
#include "poset.hpp"

namespace posetdim {

struct SolverOptions {
    /// Largest d tried; exceeding it raises BudgetExceeded.
    std::optional<std::size_t> max_d;
    /// Search nodes allowed per decision problem.
    std::uint64_t node_budget = 20'000'000;
};

struct DimensionResult {
    std::size_t dimension = 1;
    PairColoring witness;
};

/// Critical pairs: (x,y) incomparable with every strict predecessor of x
/// below y and every strict successor of y above x. A family of linear
/// extensions is a realizer iff it reverses all of them.
inline std::vector<IncPair> critical_pairs(const Poset& p) {
    std::vector<IncPair> out;
    for (Element x = 0; x < p.size(); ++x)
        for (Element y = 0; y < p.size(); ++y) {
            if (x == y || p.comparable(x, y)) continue;
            if (p.below(x).is_subset_of(p.below(y)) && p.above(y).is_subset_of(p.above(x)))
                out.push_back({x, y});
        }
    return out;
}

namespace detail {

/// Backtracking search for a d-class partition of `pairs` with every class
/// reversible. Each class keeps the reachability closure of P plus its
/// reversed arcs y -> x; a pair fits a class iff x does not reach y there.
class ClassSearch {
public:
    ClassSearch(const Poset& p, std::vector<IncPair> pairs, std::size_t d, std::uint64_t budget)
        : p_(p), pairs_(std::move(pairs)), d_(d), budget_(budget), assign_(pairs_.size(), -1) {
        std::vector<Bitset> base;
        for (Element x = 0; x < p.size(); ++x) base.push_back(p.above(x));
        reach_.assign(d, base);
    }

    /// nullopt when the budget ran out; otherwise whether a partition exists.
    std::optional<bool> run() {
        if (pairs_.empty()) return true;
        if (d_ == 0) return false;
        const auto r = search(0);
        if (exhausted_) return std::nullopt;
        return r;
    }

    const std::vector<int>& assignment() const { return assign_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    bool fits(std::size_t c, const IncPair& q) const { return !reach_[c][q.first].test(q.second); }

    void add(std::size_t c, const IncPair& q) {
        auto& r = reach_[c];
        Bitset gain = r[q.first];
        gain.set(q.first);
        for (Element u = 0; u < r.size(); ++u)
            if (u == q.second || r[u].test(q.second)) r[u] |= gain;
    }

    bool search(std::size_t done) {
        if (done == pairs_.size()) return true;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return false;
        }
        // Most constrained unassigned pair first; ties by index.
        std::size_t best = pairs_.size(), best_opts = d_ + 1;
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (assign_[i] >= 0) continue;
            std::size_t opts = used_ < d_ ? 1 : 0;
            for (std::size_t c = 0; c < used_; ++c) opts += fits(c, pairs_[i]);
            if (opts < best_opts) {
                best_opts = opts;
                best = i;
                if (opts == 0) return false;
            }
        }
        const IncPair q = pairs_[best];
        // Classes are interchangeable: only the first unused class may open.
        const std::size_t limit = std::min(used_ + 1, d_);
        for (std::size_t c = 0; c < limit; ++c) {
            if (!fits(c, q)) continue;
            auto saved = reach_[c];
            const std::size_t saved_used = used_;
            add(c, q);
            assign_[best] = static_cast<int>(c);
            if (c == used_) ++used_;
            if (search(done + 1)) return true;
            assign_[best] = -1;
            used_ = saved_used;
            reach_[c] = std::move(saved);
            if (exhausted_) return false;
        }
        return false;
    }

    const Poset& p_;
    std::vector<IncPair> pairs_;
    std::size_t d_;
    std::uint64_t budget_;
    std::vector<int> assign_;
    std::vector<std::vector<Bitset>> reach_;
    std::size_t used_ = 0;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

/// Size of a greedily grown set of pairwise-conflicting pairs (each two form
/// an alternating 2-cycle); a lower bound on the dimension.
inline std::size_t conflict_clique_bound(const Poset& p, const std::vector<IncPair>& pairs) {
    const std::size_t m = pairs.size();
    auto conflict = [&](const IncPair& a, const IncPair& b) {
        return p.le(a.first, b.second) && p.le(b.first, a.second);
    };
    std::vector<std::size_t> degree(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (conflict(pairs[i], pairs[j])) ++degree[i], ++degree[j];
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
    std::size_t best = m ? 1 : 0;
    const std::size_t starts = std::min<std::size_t>(m, 32);
    for (std::size_t s = 0; s < starts; ++s) {
        std::vector<std::size_t> clique{order[s]};
        for (std::size_t j : order)
            if (std::all_of(clique.begin(), clique.end(),
                            [&](std::size_t c) { return c != j && conflict(pairs[c], pairs[j]); }))
                clique.push_back(j);
        best = std::max(best, clique.size());
    }
    return best;
}

/// Extends a reversible partition of the critical pairs to a coloring of all
/// of Inc(P): every other pair takes the first class whose extension
/// reverses it.
inline PairColoring extend_to_all_pairs(const Poset& p, const std::vector<IncPair>& crit,
                                        const std::vector<int>& assign, std::size_t classes) {
    std::vector<std::vector<IncPair>> members(classes);
    for (std::size_t i = 0; i < crit.size(); ++i) members[static_cast<std::size_t>(assign[i])].push_back(crit[i]);
    std::vector<std::vector<std::size_t>> pos;
    for (const auto& m : members) pos.push_back(linear_extension_reversing(p, m).positions());
    PairColoring c(p.size());
    for (std::size_t i = 0; i < crit.size(); ++i) c.set(crit[i], static_cast<Color>(assign[i]));
    for (const auto& q : incomparable_pairs(p)) {
        if (c.contains(q)) continue;
        bool placed = false;
        for (std::size_t k = 0; k < classes && !placed; ++k)
            if (pos[k][q.second] < pos[k][q.first]) {
                c.set(q, static_cast<Color>(k));
                placed = true;
            }
        if (!placed) throw InternalError("critical-pair realizer misses an incomparable pair");
    }
    return c;
}

}  // namespace detail

/// A valid coloring of Inc(P) with at most d colors, or nullopt when none
/// exists. Throws BudgetExceeded when the search budget runs out.
inline std::optional<PairColoring> has_valid_coloring(const Poset& p, std::size_t d,
                                                      std::uint64_t node_budget = 20'000'000) {
    if (d == 0) throw DomainError("d must be at least 1");
    auto crit = critical_pairs(p);
    if (crit.empty()) return PairColoring(p.size());
    detail::ClassSearch search(p, crit, d, node_budget);
    const auto r = search.run();
    if (!r) throw BudgetExceeded("search budget exhausted at d=" + std::to_string(d));
    if (!*r) return std::nullopt;
    const auto& a = search.assignment();
    const std::size_t used = static_cast<std::size_t>(*std::max_element(a.begin(), a.end())) + 1;
    return detail::extend_to_all_pairs(p, crit, a, used);
}

namespace detail {

/// Twin classes: elements with identical strict up- and down-sets.
/// Returns the class index per element; classes are numbered by first member.
inline std::vector<std::size_t> twin_classes(const Poset& p, std::vector<Element>& reps) {
    std::vector<std::size_t> cls(p.size(), p.size());
    reps.clear();
    for (Element x = 0; x < p.size(); ++x) {
        if (cls[x] != p.size()) continue;
        cls[x] = reps.size();
        for (Element y = x + 1; y < p.size(); ++y)
            if (cls[y] == p.size() && p.above(x) == p.above(y) && p.below(x) == p.below(y)) cls[y] = reps.size();
        reps.push_back(x);
    }
    return cls;
}

/// Components of the comparability graph, numbered by smallest member.
inline std::vector<std::size_t> comparability_components(const Poset& p, std::size_t& count) {
    std::vector<std::size_t> comp(p.size(), p.size());
    count = 0;
    for (Element s = 0; s < p.size(); ++s) {
        if (comp[s] != p.size()) continue;
        std::vector<Element> stack{s};
        comp[s] = count;
        while (!stack.empty()) {
            const Element u = stack.back();
            stack.pop_back();
            (p.above(u) | p.below(u)).for_each([&](std::size_t w) {
                if (comp[w] == p.size()) {
                    comp[w] = count;
                    stack.push_back(w);
                }
            });
        }
        ++count;
    }
    return comp;
}

inline DimensionResult solve_connected(const Poset& p, const SolverOptions& opt) {
    auto crit = critical_pairs(p);
    if (crit.empty()) return {1, PairColoring(p.size())};
    const std::size_t lb = std::max<std::size_t>(2, conflict_clique_bound(p, crit));
    for (std::size_t d = lb;; ++d) {
        if (opt.max_d && d > *opt.max_d)
            throw BudgetExceeded("no valid coloring with at most " + std::to_string(*opt.max_d) + " colors found");
        ClassSearch search(p, crit, d, opt.node_budget);
        const auto r = search.run();
        if (!r) throw BudgetExceeded("search budget exhausted at d=" + std::to_string(d));
        if (*r) return {d, extend_to_all_pairs(p, crit, search.assignment(), d)};
    }
}

}  // namespace detail

/// Exact dimension by iterative deepening from a conflict-clique lower bound.
/// d = 1 when Inc(P) is empty. Twin elements are collapsed and comparability
/// components solved separately; both keep the dimension once it is at least 2.
inline DimensionResult exact_dimension(const Poset& p, const SolverOptions& opt = {}) {
    const auto inc = incomparable_pairs(p);
    if (inc.empty()) return {1, PairColoring(p.size())};
    if (opt.max_d && *opt.max_d < 2)
        throw BudgetExceeded("no valid coloring with at most " + std::to_string(*opt.max_d) + " colors found");

    std::vector<Element> reps;
    const auto cls = detail::twin_classes(p, reps);
    if (reps.size() < p.size()) {
        const auto q = induced_subposet(p, std::span<const Element>(reps));
        const auto sub = exact_dimension(q.poset, opt);
        PairColoring c(p.size());
        // Each twin block sits contiguously in every extension: ascending in
        // class 1, descending in all others.
        for (const auto& pr : inc) {
            const std::size_t a = cls[pr.first], b = cls[pr.second];
            if (a == b)
                c.set(pr, pr.first < pr.second ? 0 : 1);
            else
                c.set(pr, *sub.witness.get({a, b}));
        }
        return {std::max<std::size_t>(2, sub.dimension), std::move(c)};
    }

    std::size_t count = 0;
    const auto comp = detail::comparability_components(p, count);
    if (count > 1) {
        PairColoring c(p.size());
        std::size_t d = 2;
        for (std::size_t k = 0; k < count; ++k) {
            std::vector<Element> members;
            for (Element x = 0; x < p.size(); ++x)
                if (comp[x] == k) members.push_back(x);
            const auto part = induced_subposet(p, std::span<const Element>(members));
            const auto sub = exact_dimension(part.poset, opt);
            d = std::max(d, sub.dimension);
            for (const auto& [q, col] : sub.witness.entries())
                c.set({part.to_parent[q.first], part.to_parent[q.second]}, col);
        }
        // Components in ascending order in class 0, descending in class 1.
        for (const auto& pr : inc)
            if (comp[pr.first] != comp[pr.second]) c.set(pr, comp[pr.first] < comp[pr.second] ? 1 : 0);
        return {d, std::move(c)};
    }
    return detail::solve_connected(p, opt);
}

/// Every linear extension of P (factorial; small posets only).
inline std::vector<LinearExtension> all_linear_extensions(const Poset& p) {
    std::vector<LinearExtension> out;
    const std::size_t n = p.size();
    std::vector<Element> prefix;
    std::vector<std::size_t> missing(n);
    for (Element x = 0; x < n; ++x) missing[x] = p.below(x).count();
    std::vector<bool> placed(n, false);
    auto rec = [&](auto&& self) -> void {
        if (prefix.size() == n) {
            out.push_back({prefix});
            return;
        }
        for (Element x = 0; x < n; ++x) {
            if (placed[x] || missing[x] != 0) continue;
            placed[x] = true;
            prefix.push_back(x);
            p.above(x).for_each([&](std::size_t y) { --missing[y]; });
            self(self);
            p.above(x).for_each([&](std::size_t y) { ++missing[y]; });
            prefix.pop_back();
            placed[x] = false;
        }
    };
    rec(rec);
    return out;
}

inline constexpr std::size_t kOracleMaxSize = 7;

/// Minimum number of linear extensions intersecting to P, by enumerating all
/// extensions and searching covers of Inc(P) by their reversed-pair sets.
inline std::size_t oracle_dimension(const Poset& p) {
    if (p.size() > kOracleMaxSize)
        throw DomainError("oracle is limited to " + std::to_string(kOracleMaxSize) + " elements");
    const auto inc = incomparable_pairs(p);
    if (inc.empty()) return 1;
    std::vector<std::uint64_t> masks;
    for (const auto& l : all_linear_extensions(p)) {
        const auto pos = l.positions();
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < inc.size(); ++i)
            if (pos[inc[i].second] < pos[inc[i].first]) m |= std::uint64_t{1} << i;
        masks.push_back(m);
    }
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    const std::uint64_t full = inc.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << inc.size()) - 1;
    auto covers = [&](auto&& self, std::uint64_t have, std::size_t left) -> bool {
        if (have == full) return true;
        if (left == 0) return false;
        const int first = std::countr_zero(~have & full);
        for (std::uint64_t m : masks)
            if ((m >> first) & 1U)
                if (self(self, have | m, left - 1)) return true;
        return false;
    };
    for (std::size_t k = 1;; ++k)
        if (covers(covers, 0, k)) return k;
}

}  // namespace posetdim
