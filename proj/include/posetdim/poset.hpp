#pragma once

// Finite posets on dense 0-based element indices, their incomparable pairs,
// alternating cycles, and pair colorings.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "errors.hpp"

namespace posetdim {

using Element = std::size_t;
using Color = std::int32_t;
using Arc = std::pair<Element, Element>;

/// Ordered pair of incomparable elements.
struct IncPair {
    Element first = 0;
    Element second = 0;

    friend auto operator<=>(const IncPair&, const IncPair&) = default;
};

/// Strict partial order stored as dense successor/predecessor sets.
class Poset {
public:
    Poset() = default;

    /// Transitive closure of `arcs`; throws CycleError when no poset exists.
    static Poset from_relations(std::size_t n, std::span<const Arc> arcs,
                                std::vector<std::string> labels = {}) {
        for (const auto& [u, v] : arcs) {
            if (u >= n || v >= n)
                throw DomainError("arc (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") out of range for " + std::to_string(n) + " elements");
            if (u == v) throw CycleError("self-loop on element " + std::to_string(u));
        }
        std::vector<std::vector<Element>> out(n);
        std::vector<std::size_t> indeg(n, 0);
        for (const auto& [u, v] : arcs) {
            out[u].push_back(v);
            ++indeg[v];
        }
        std::vector<Element> order;
        order.reserve(n);
        for (Element v = 0; v < n; ++v)
            if (indeg[v] == 0) order.push_back(v);
        for (std::size_t head = 0; head < order.size(); ++head)
            for (Element w : out[order[head]])
                if (--indeg[w] == 0) order.push_back(w);
        if (order.size() != n) throw CycleError("relation digraph contains a directed cycle");

        Poset p(n);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const Element u = *it;
            for (Element w : out[u]) {
                p.up_[u].set(w);
                p.up_[u] |= p.up_[w];
            }
        }
        p.rebuild_down();
        p.set_labels(std::move(labels));
        return p;
    }

    /// Adopts an already-closed relation given by strict up-sets, checking all
    /// three order axioms.
    static Poset from_up_sets(std::vector<Bitset> up, std::vector<std::string> labels = {}) {
        Poset p(up.size());
        p.up_ = std::move(up);
        const std::size_t n = p.size();
        for (Element x = 0; x < n; ++x) {
            if (p.up_[x].size() != n) throw DomainError("up-set width mismatch");
            if (p.up_[x].test(x)) throw CycleError("relation is not irreflexive");
        }
        for (Element x = 0; x < n; ++x) {
            bool ok = true;
            p.up_[x].for_each([&](std::size_t y) {
                if (!p.up_[y].is_subset_of(p.up_[x])) ok = false;
                if (p.up_[y].test(x)) ok = false;
            });
            if (!ok) throw CycleError("relation is not a strict partial order");
        }
        p.rebuild_down();
        p.set_labels(std::move(labels));
        return p;
    }

    std::size_t size() const { return up_.size(); }

    bool lt(Element x, Element y) const { return up_[x].test(y); }
    bool le(Element x, Element y) const { return x == y || up_[x].test(y); }
    bool comparable(Element x, Element y) const { return le(x, y) || le(y, x); }

    /// Strict successors of x.
    const Bitset& above(Element x) const { return up_[x]; }
    /// Strict predecessors of x.
    const Bitset& below(Element x) const { return down_[x]; }

    const std::vector<std::string>& labels() const { return labels_; }
    std::string label(Element x) const {
        return x < labels_.size() && !labels_[x].empty() ? labels_[x] : std::to_string(x + 1);
    }
    void set_labels(std::vector<std::string> labels) {
        if (!labels.empty() && labels.size() != size())
            throw DomainError("label count does not match element count");
        labels_ = std::move(labels);
    }

    bool is_minimal(Element x) const { return down_[x].none(); }
    bool is_maximal(Element x) const { return up_[x].none(); }

    /// Same order relation (labels are ignored).
    bool same_order(const Poset& o) const { return up_ == o.up_; }

private:
    explicit Poset(std::size_t n) : up_(n, Bitset(n)), down_(n, Bitset(n)) {}

    void rebuild_down() {
        const std::size_t n = size();
        down_.assign(n, Bitset(n));
        for (Element x = 0; x < n; ++x) up_[x].for_each([&](std::size_t y) { down_[y].set(x); });
    }

    std::vector<Bitset> up_;
    std::vector<Bitset> down_;
    std::vector<std::string> labels_;
};

/// Cover relations, stored with the lower element first.
struct CoverGraph {
    std::size_t n = 0;
    std::vector<Arc> edges;

    bool has_edge(Element u, Element v) const {
        const Arc a{std::min(u, v), std::max(u, v)};
        return std::any_of(edges.begin(), edges.end(), [&](const Arc& e) {
            return std::minmax(e.first, e.second) == std::minmax(a.first, a.second);
        });
    }

    std::vector<std::vector<Element>> adjacency() const {
        std::vector<std::vector<Element>> adj(n);
        for (const auto& [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        return adj;
    }
};

inline CoverGraph cover_graph(const Poset& p) {
    CoverGraph g{p.size(), {}};
    for (Element x = 0; x < p.size(); ++x) {
        p.above(x).for_each([&](std::size_t y) {
            if (!p.above(x).intersects(p.below(y))) g.edges.emplace_back(x, y);
        });
    }
    return g;
}

/// Maximum chain size.
inline std::size_t height(const Poset& p) {
    const std::size_t n = p.size();
    std::vector<Element> order(n);
    for (Element x = 0; x < n; ++x) order[x] = x;
    std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
        return p.below(a).count() < p.below(b).count();
    });
    std::vector<std::size_t> chain(n, 1);
    std::size_t best = 0;
    for (Element x : order) {
        p.below(x).for_each([&](std::size_t y) { chain[x] = std::max(chain[x], chain[y] + 1); });
        best = std::max(best, chain[x]);
    }
    return best;
}

inline Bitset up_set(const Poset& p, Element x) {
    Bitset s = p.above(x);
    s.set(x);
    return s;
}

inline Bitset down_set(const Poset& p, Element x) {
    Bitset s = p.below(x);
    s.set(x);
    return s;
}

/// A subposet together with the map from its indices back to the parent's.
struct Subposet {
    Poset poset;
    std::vector<Element> to_parent;
};

inline Subposet induced_subposet(const Poset& p, std::span<const Element> members) {
    std::vector<Element> elems(members.begin(), members.end());
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    const std::size_t m = elems.size();
    std::vector<Bitset> up(m, Bitset(m));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            if (p.lt(elems[i], elems[j])) up[i].set(j);
        if (!p.labels().empty()) labels.push_back(p.labels()[elems[i]]);
    }
    return {Poset::from_up_sets(std::move(up), std::move(labels)), std::move(elems)};
}

inline Subposet induced_subposet(const Poset& p, const Bitset& members) {
    const auto v = members.members();
    return induced_subposet(p, std::span<const Element>(v));
}

inline std::vector<IncPair> incomparable_pairs(const Poset& p) {
    std::vector<IncPair> out;
    for (Element x = 0; x < p.size(); ++x)
        for (Element y = 0; y < p.size(); ++y)
            if (x != y && !p.comparable(x, y)) out.push_back({x, y});
    return out;
}

/// True when consecutive pairs satisfy x_i <= y_{i+1} cyclically.
inline bool is_alternating_cycle(const Poset& p, std::span<const IncPair> cycle) {
    if (cycle.empty()) return false;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const auto& cur = cycle[i];
        const auto& next = cycle[(i + 1) % cycle.size()];
        if (p.comparable(cur.first, cur.second)) return false;
        if (!p.le(cur.first, next.second)) return false;
    }
    return true;
}

/// Searches the digraph on `pairs` with an arc (x,y) -> (x',y') whenever
/// x <= y'. Returns a directed cycle in traversal order, i.e. an alternating
/// cycle, or nullopt when `pairs` is reversible.
inline std::optional<std::vector<IncPair>> contains_alternating_cycle(
    const Poset& p, std::span<const IncPair> pairs) {
    for (const auto& q : pairs)
        if (q.first == q.second || p.comparable(q.first, q.second))
            throw MembershipError("pair (" + p.label(q.first) + "," + p.label(q.second) +
                                  ") is not incomparable");
    const std::size_t m = pairs.size();
    enum : std::uint8_t { kWhite, kGrey, kBlack };
    std::vector<std::uint8_t> state(m, kWhite);
    // Frame: node index and the next candidate successor to try.
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    for (std::size_t s = 0; s < m; ++s) {
        if (state[s] != kWhite) continue;
        stack.push_back({s, 0});
        state[s] = kGrey;
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            bool descended = false;
            while (next < m) {
                const std::size_t w = next++;
                if (!p.le(pairs[node].first, pairs[w].second)) continue;
                if (state[w] == kGrey) {
                    std::vector<IncPair> cycle;
                    auto it = std::find_if(stack.begin(), stack.end(),
                                           [&](const auto& f) { return f.first == w; });
                    for (; it != stack.end(); ++it) cycle.push_back(pairs[it->first]);
                    return cycle;
                }
                if (state[w] == kWhite) {
                    state[w] = kGrey;
                    stack.push_back({w, 0});
                    descended = true;
                    break;
                }
            }
            if (!descended) {
                state[stack.back().first] = kBlack;
                stack.pop_back();
            }
        }
    }
    return std::nullopt;
}

/// Total or partial assignment of colors to ordered pairs, stored densely.
class PairColoring {
public:
    static constexpr Color kNone = -1;

    PairColoring() = default;
    explicit PairColoring(std::size_t n) : n_(n), colors_(n * n, kNone) {}

    std::size_t universe() const { return n_; }

    void set(IncPair q, Color c) {
        if (c < 0) throw DomainError("colors are non-negative");
        Color& slot = colors_[q.first * n_ + q.second];
        if (slot == kNone) ++assigned_;
        slot = c;
    }
    void erase(IncPair q) {
        Color& slot = colors_[q.first * n_ + q.second];
        if (slot != kNone) --assigned_;
        slot = kNone;
    }
    std::optional<Color> get(IncPair q) const {
        const Color c = colors_[q.first * n_ + q.second];
        if (c == kNone) return std::nullopt;
        return c;
    }
    bool contains(IncPair q) const { return colors_[q.first * n_ + q.second] != kNone; }
    std::size_t assigned() const { return assigned_; }

    /// Assigned pairs in lexicographic order.
    std::vector<std::pair<IncPair, Color>> entries() const {
        std::vector<std::pair<IncPair, Color>> out;
        out.reserve(assigned_);
        for (Element x = 0; x < n_; ++x)
            for (Element y = 0; y < n_; ++y)
                if (const Color c = colors_[x * n_ + y]; c != kNone) out.push_back({{x, y}, c});
        return out;
    }

    /// Pairs grouped by color, colors ascending.
    std::map<Color, std::vector<IncPair>> classes() const {
        std::map<Color, std::vector<IncPair>> out;
        for (const auto& [q, c] : entries()) out[c].push_back(q);
        return out;
    }

    std::size_t color_count() const { return classes().size(); }

    friend bool operator==(const PairColoring&, const PairColoring&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Color> colors_;
    std::size_t assigned_ = 0;
};

struct ColoringVerdict {
    bool valid = true;
    std::optional<Color> color;              // color of the offending class
    std::vector<IncPair> witness;            // monochromatic alternating cycle
};

/// Checks that `c` is total on Inc(P) and colors no alternating cycle with a
/// single color. Throws TotalityError for a missing pair and MembershipError
/// for a colored comparable pair.
inline ColoringVerdict is_valid_coloring(const Poset& p, const PairColoring& c) {
    if (c.universe() != p.size() && !(p.size() == 0 && c.assigned() == 0))
        throw DomainError("coloring universe does not match poset size");
    for (Element x = 0; x < p.size(); ++x)
        for (Element y = 0; y < p.size(); ++y) {
            if (x == y || p.comparable(x, y)) {
                if (c.assigned() && c.contains({x, y}))
                    throw MembershipError("colored pair (" + p.label(x) + "," + p.label(y) +
                                          ") is not incomparable");
                continue;
            }
            if (!c.contains({x, y}))
                throw TotalityError("pair (" + p.label(x) + "," + p.label(y) + ") is uncolored");
        }
    for (const auto& [color, members] : c.classes()) {
        if (auto cyc = contains_alternating_cycle(p, members)) {
            return {false, color, std::move(*cyc)};
        }
    }
    return {};
}

/// Permutation of the elements, bottom first.
struct LinearExtension {
    std::vector<Element> order;

    std::vector<std::size_t> positions() const {
        std::vector<std::size_t> pos(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
        return pos;
    }
    friend bool operator==(const LinearExtension&, const LinearExtension&) = default;
};

inline bool is_linear_extension(const Poset& p, const LinearExtension& l) {
    if (l.order.size() != p.size()) return false;
    std::vector<bool> seen(p.size(), false);
    for (Element x : l.order) {
        if (x >= p.size() || seen[x]) return false;
        seen[x] = true;
    }
    const auto pos = l.positions();
    for (Element x = 0; x < p.size(); ++x) {
        bool ok = true;
        p.above(x).for_each([&](std::size_t y) { ok = ok && pos[x] < pos[y]; });
        if (!ok) return false;
    }
    return true;
}

/// A linear extension with y below x for every (x,y) in `reversed`.
/// Topologically sorts P's order plus the arcs y -> x, smallest index first.
inline LinearExtension linear_extension_reversing(const Poset& p,
                                                  std::span<const IncPair> reversed) {
    const std::size_t n = p.size();
    std::vector<std::vector<Element>> extra(n);
    std::vector<std::size_t> indeg(n, 0);
    for (Element x = 0; x < n; ++x) indeg[x] = p.below(x).count();
    for (const auto& q : reversed) {
        if (q.first == q.second || p.comparable(q.first, q.second))
            throw MembershipError("pair (" + p.label(q.first) + "," + p.label(q.second) +
                                  ") is not incomparable");
        extra[q.second].push_back(q.first);
        ++indeg[q.first];
    }
    std::vector<bool> done(n, false);
    LinearExtension l;
    l.order.reserve(n);
    // n is small; a linear scan for the smallest ready element keeps the
    // result canonical.
    for (std::size_t step = 0; step < n; ++step) {
        Element pick = n;
        for (Element v = 0; v < n; ++v)
            if (!done[v] && indeg[v] == 0) {
                pick = v;
                break;
            }
        if (pick == n) throw CycleError("reversed pairs contain an alternating cycle");
        done[pick] = true;
        l.order.push_back(pick);
        p.above(pick).for_each([&](std::size_t w) { --indeg[w]; });
        for (Element w : extra[pick]) --indeg[w];
    }
    return l;
}

/// True when the extensions intersect exactly to P's order.
inline bool is_realizer(const Poset& p, std::span<const LinearExtension> exts) {
    if (p.size() == 0) return true;
    if (exts.empty()) return false;
    std::vector<std::vector<std::size_t>> pos;
    for (const auto& l : exts) {
        if (!is_linear_extension(p, l)) return false;
        pos.push_back(l.positions());
    }
    for (Element x = 0; x < p.size(); ++x)
        for (Element y = 0; y < p.size(); ++y) {
            if (x == y) continue;
            const bool all_below =
                std::all_of(pos.begin(), pos.end(), [&](const auto& ps) { return ps[x] < ps[y]; });
            if (all_below != p.lt(x, y)) return false;
        }
    return true;
}

/// One extension per color class; the result is verified to be a realizer.
inline std::vector<LinearExtension> realizer_from_coloring(const Poset& p, const PairColoring& c) {
    std::vector<LinearExtension> out;
    for (const auto& [color, members] : c.classes()) out.push_back(linear_extension_reversing(p, members));
    if (out.empty()) out.push_back(linear_extension_reversing(p, {}));
    if (!is_realizer(p, out)) throw ValidityError("extensions do not intersect to the poset order");
    return out;
}

}  // namespace posetdim
