#pragma once

// Tree decompositions of cover graphs and the planted-tree machinery used by
// the signature coloring: lowest bags, the close_k relation, bag colorings and
// color sequences.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "errors.hpp"
#include "poset.hpp"

namespace posetdim {

using BagId = std::size_t;

struct TreeDecomposition {
    std::size_t vertex_count = 0;
    std::vector<std::vector<Element>> bags;  // each sorted, duplicate-free
    std::vector<std::pair<BagId, BagId>> edges;

    std::size_t bag_count() const { return bags.size(); }

    /// Largest bag size minus one (-1 for no bags is reported as 0).
    std::size_t width() const {
        std::size_t w = 0;
        for (const auto& b : bags) w = std::max(w, b.size());
        return w == 0 ? 0 : w - 1;
    }

    std::vector<std::vector<BagId>> neighbors() const {
        std::vector<std::vector<BagId>> adj(bags.size());
        for (const auto& [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        for (auto& v : adj) std::sort(v.begin(), v.end());
        return adj;
    }

    Bitset bag_set(BagId b) const {
        Bitset s(vertex_count);
        for (Element v : bags[b]) s.set(v);
        return s;
    }

    void normalize() {
        for (auto& b : bags) {
            std::sort(b.begin(), b.end());
            b.erase(std::unique(b.begin(), b.end()), b.end());
        }
    }

    friend bool operator==(const TreeDecomposition&, const TreeDecomposition&) = default;
};

inline std::vector<Element> intersect_sorted(const std::vector<Element>& a,
                                             const std::vector<Element>& b) {
    std::vector<Element> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

struct DecompositionVerdict {
    bool valid = true;
    std::string reason;
    std::optional<Arc> uncovered_edge;
    std::optional<Element> broken_vertex;
    std::size_t adhesion = 0;
};

/// Checks the tree shape, vertex coverage, edge coverage and subtree
/// connectivity; reports the adhesion on success.
inline DecompositionVerdict validate(const TreeDecomposition& t, const CoverGraph& g) {
    DecompositionVerdict v;
    auto fail = [&](std::string why) {
        v.valid = false;
        v.reason = std::move(why);
        return v;
    };
    if (t.vertex_count != g.n) return fail("vertex count differs from graph");
    if (t.bags.empty()) {
        if (g.n == 0) return v;
        return fail("no bags");
    }
    const std::size_t nb = t.bags.size();
    for (const auto& bag : t.bags)
        for (Element x : bag)
            if (x >= g.n) return fail("bag vertex " + std::to_string(x) + " out of range");
    if (t.edges.size() != nb - 1) return fail("tree edge count is not bags-1");
    const auto adj = t.neighbors();
    for (const auto& [a, b] : t.edges)
        if (a >= nb || b >= nb || a == b) return fail("malformed tree edge");
    {
        std::vector<bool> seen(nb, false);
        std::vector<BagId> stack{0};
        seen[0] = true;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const BagId b = stack.back();
            stack.pop_back();
            for (BagId c : adj[b])
                if (!seen[c]) {
                    seen[c] = true;
                    ++reached;
                    stack.push_back(c);
                }
        }
        if (reached != nb) return fail("tree edges do not connect all bags");
    }
    std::vector<Bitset> sets;
    for (BagId b = 0; b < nb; ++b) sets.push_back(t.bag_set(b));

    for (const auto& [x, y] : g.edges) {
        const bool covered = std::any_of(sets.begin(), sets.end(),
                                         [&](const Bitset& s) { return s.test(x) && s.test(y); });
        if (!covered) {
            v.uncovered_edge = Arc{x, y};
            return fail("cover edge " + std::to_string(x + 1) + "-" + std::to_string(y + 1) +
                        " lies in no bag");
        }
    }
    // Occurrence sets must be non-empty and connected: count bags and
    // internal tree edges; a forest is a tree iff edges = nodes - 1.
    for (Element x = 0; x < g.n; ++x) {
        std::size_t nodes = 0, links = 0;
        for (BagId b = 0; b < nb; ++b) nodes += sets[b].test(x);
        for (const auto& [a, b] : t.edges) links += sets[a].test(x) && sets[b].test(x);
        if (nodes == 0 || links + 1 != nodes) {
            v.broken_vertex = x;
            return fail("bags containing vertex " + std::to_string(x + 1) +
                        (nodes == 0 ? " are empty" : " are not connected"));
        }
    }
    for (const auto& [a, b] : t.edges)
        v.adhesion = std::max(v.adhesion, intersect_sorted(t.bags[a], t.bags[b]).size());
    return v;
}

/// G[X] plus a clique on every adhesion set of X; edges use global vertex ids.
inline std::vector<Arc> torso(const TreeDecomposition& t, const CoverGraph& g, BagId x) {
    const Bitset in = t.bag_set(x);
    std::set<Arc> edges;
    for (const auto& [u, v] : g.edges)
        if (in.test(u) && in.test(v)) edges.insert(std::minmax(u, v));
    const auto adj = t.neighbors();
    for (BagId nb : adj[x]) {
        const auto k = intersect_sorted(t.bags[x], t.bags[nb]);
        for (std::size_t i = 0; i < k.size(); ++i)
            for (std::size_t j = i + 1; j < k.size(); ++j) edges.insert({k[i], k[j]});
    }
    return {edges.begin(), edges.end()};
}

/// A rooted tree decomposition with a fixed left-to-right child order.
/// Bag X is below bag Y (X <= Y) when X lies on the path from Y to the root.
class PlantedTree {
public:
    /// `child_order`, when given, lists the children of every bag left to right.
    static PlantedTree plant(const TreeDecomposition& t, BagId root = 0,
                             std::optional<std::vector<std::vector<BagId>>> child_order = {}) {
        if (root >= t.bag_count()) throw DomainError("root bag out of range");
        PlantedTree pt;
        pt.td_ = t;
        const std::size_t nb = t.bag_count();
        const auto adj = t.neighbors();
        pt.root_ = root;
        pt.parent_.assign(nb, nb);
        pt.depth_.assign(nb, 0);
        pt.children_.assign(nb, {});
        std::vector<BagId> order{root};
        std::vector<bool> seen(nb, false);
        seen[root] = true;
        for (std::size_t head = 0; head < order.size(); ++head) {
            const BagId b = order[head];
            for (BagId c : adj[b])
                if (!seen[c]) {
                    seen[c] = true;
                    pt.parent_[c] = b;
                    pt.depth_[c] = pt.depth_[b] + 1;
                    pt.children_[b].push_back(c);
                    order.push_back(c);
                }
        }
        if (order.size() != nb) throw PreconditionError("decomposition tree is disconnected");
        pt.bfs_order_ = std::move(order);
        if (child_order) {
            if (child_order->size() != nb) throw DomainError("child order has wrong bag count");
            for (BagId b = 0; b < nb; ++b) {
                auto given = (*child_order)[b];
                auto expect = pt.children_[b];
                std::sort(given.begin(), given.end());
                std::sort(expect.begin(), expect.end());
                if (given != expect) throw DomainError("child order is not a permutation of children");
                pt.children_[b] = (*child_order)[b];
            }
        }
        pt.ell_ = pt.preorder(false);
        pt.r_ = pt.preorder(true);
        pt.euler();

        pt.sets_.clear();
        for (BagId b = 0; b < nb; ++b) pt.sets_.push_back(t.bag_set(b));
        pt.low_.assign(t.vertex_count, nb);
        for (BagId b : pt.bfs_order_)
            for (Element x : t.bags[b])
                if (pt.low_[x] == nb) pt.low_[x] = b;
        for (Element x = 0; x < t.vertex_count; ++x)
            if (pt.low_[x] == nb)
                throw PreconditionError("vertex " + std::to_string(x + 1) + " lies in no bag");
        pt.close_cache_.push_back({});
        for (BagId b = 0; b < nb; ++b) pt.close_cache_[0].push_back(pt.singleton(b));
        return pt;
    }

    const TreeDecomposition& decomposition() const { return td_; }
    std::size_t bag_count() const { return td_.bag_count(); }
    BagId root() const { return root_; }
    std::optional<BagId> parent(BagId b) const {
        if (b == root_) return std::nullopt;
        return parent_[b];
    }
    std::size_t depth(BagId b) const { return depth_[b]; }
    const std::vector<BagId>& children(BagId b) const { return children_[b]; }
    /// Bags by non-decreasing distance from the root.
    const std::vector<BagId>& bfs_order() const { return bfs_order_; }

    /// Left-to-right and right-to-left depth-first labels (root gets 0).
    std::size_t ell(BagId b) const { return ell_[b]; }
    std::size_t r(BagId b) const { return r_[b]; }

    /// X <= Y in the bottom-to-top order of the tree.
    bool below_eq(BagId x, BagId y) const { return tin_[x] <= tin_[y] && tout_[y] <= tout_[x]; }
    bool below(BagId x, BagId y) const { return x != y && below_eq(x, y); }

    bool contains(BagId b, Element v) const { return sets_[b].test(v); }
    const Bitset& bag_set(BagId b) const { return sets_[b]; }
    const std::vector<Element>& bag(BagId b) const { return td_.bags[b]; }

    /// The unique lowest bag containing v.
    BagId low(Element v) const { return low_[v]; }

    /// B_k(X) as a bag set. B_1(X) = {X} plus low(z) for z in X; higher k
    /// by composing B_1.
    const Bitset& close_set(std::size_t k, BagId x) const {
        while (close_cache_.size() <= k) {
            const std::size_t j = close_cache_.size();
            std::vector<Bitset> next;
            next.reserve(bag_count());
            for (BagId b = 0; b < bag_count(); ++b) {
                Bitset s = close_cache_[j - 1][b];
                close_cache_[j - 1][b].for_each([&](std::size_t y) {
                    for (Element z : td_.bags[y]) s.set(low_[z]);
                });
                next.push_back(std::move(s));
            }
            close_cache_.push_back(std::move(next));
        }
        return close_cache_[k][x];
    }

    bool close(std::size_t k, BagId x, BagId y) const { return close_set(k, x).test(y); }

    /// B_k(X) listed top to bottom (decreasing depth).
    std::vector<BagId> bags_close(std::size_t k, BagId x) const {
        auto v = close_set(k, x).members();
        std::sort(v.begin(), v.end(), [&](BagId a, BagId b) { return depth_[a] > depth_[b]; });
        return v;
    }

    /// A(X,Y): the highest bag in B_h(X) and B_h(Y).
    std::optional<BagId> meet_bag(std::size_t h, BagId x, BagId y) const {
        const Bitset common = close_set(h, x) & close_set(h, y);
        std::optional<BagId> best;
        common.for_each([&](std::size_t b) {
            if (!best || depth_[b] > depth_[*best]) best = b;
        });
        return best;
    }

private:
    PlantedTree() = default;

    Bitset singleton(BagId b) const {
        Bitset s(bag_count());
        s.set(b);
        return s;
    }

    std::vector<std::size_t> preorder(bool reversed) const {
        std::vector<std::size_t> label(bag_count());
        std::size_t next = 0;
        std::vector<BagId> stack{root_};
        while (!stack.empty()) {
            const BagId b = stack.back();
            stack.pop_back();
            label[b] = next++;
            const auto& ch = children_[b];
            if (reversed)
                for (BagId c : ch) stack.push_back(c);
            else
                for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
        }
        return label;
    }

    void euler() {
        tin_.assign(bag_count(), 0);
        tout_.assign(bag_count(), 0);
        std::size_t clock = 0;
        std::vector<std::pair<BagId, std::size_t>> stack{{root_, 0}};
        tin_[root_] = clock++;
        while (!stack.empty()) {
            auto& [b, i] = stack.back();
            if (i < children_[b].size()) {
                const BagId c = children_[b][i++];
                tin_[c] = clock++;
                stack.push_back({c, 0});
            } else {
                tout_[b] = clock++;
                stack.pop_back();
            }
        }
    }

    TreeDecomposition td_;
    BagId root_ = 0;
    std::vector<BagId> parent_;
    std::vector<std::size_t> depth_;
    std::vector<std::vector<BagId>> children_;
    std::vector<BagId> bfs_order_;
    std::vector<std::size_t> ell_, r_, tin_, tout_;
    std::vector<Bitset> sets_;
    std::vector<BagId> low_;
    mutable std::vector<std::vector<Bitset>> close_cache_;
};

/// Bag coloring in which bags related by close_{2h} get distinct colors.
struct BagColoring {
    std::vector<Color> phi;
    std::size_t palette = 0;
};

/// Greedy coloring processed from the root upwards; every member of
/// B_{2h}(X) other than X is already colored when X is reached.
inline BagColoring greedy_phi(const PlantedTree& pt, std::size_t h) {
    BagColoring c;
    c.phi.assign(pt.bag_count(), PairColoring::kNone);
    for (BagId x : pt.bfs_order()) {
        std::vector<bool> used(pt.bag_count() + 1, false);
        pt.close_set(2 * h, x).for_each([&](std::size_t y) {
            if (y != x) used[static_cast<std::size_t>(c.phi[y])] = true;
        });
        Color col = 0;
        while (used[static_cast<std::size_t>(col)]) ++col;
        c.phi[x] = col;
        c.palette = std::max(c.palette, static_cast<std::size_t>(col) + 1);
    }
    return c;
}

/// 1 + s + ... + s^k.
inline std::size_t close_bound(std::size_t s, std::size_t k) {
    std::size_t total = 0, term = 1;
    for (std::size_t i = 0; i <= k; ++i) {
        total += term;
        term *= s;
    }
    return total;
}

using TauSequence = std::vector<Color>;

/// Colors of B_h(X) from top to bottom.
inline TauSequence tau(const PlantedTree& pt, const BagColoring& phi, std::size_t h, BagId x) {
    TauSequence t;
    for (BagId b : pt.bags_close(h, x)) t.push_back(phi.phi[b]);
    return t;
}

/// Restricts each sequence to the colors of the other and keeps the longest
/// common trailing segment.
inline TauSequence oplus(const TauSequence& a, const TauSequence& b) {
    auto keep = [](const TauSequence& src, const TauSequence& other) {
        TauSequence out;
        for (Color c : src)
            if (std::find(other.begin(), other.end(), c) != other.end()) out.push_back(c);
        return out;
    };
    const TauSequence a2 = keep(a, b), b2 = keep(b, a);
    std::size_t len = 0;
    while (len < a2.size() && len < b2.size() && a2[a2.size() - 1 - len] == b2[b2.size() - 1 - len])
        ++len;
    return TauSequence(a2.end() - static_cast<std::ptrdiff_t>(len), a2.end());
}

/// Strict total order on bags, as a rank per bag.
struct BagOrder {
    std::vector<std::size_t> rank;

    static BagOrder identity(std::size_t n) {
        BagOrder o;
        o.rank.resize(n);
        std::iota(o.rank.begin(), o.rank.end(), std::size_t{0});
        return o;
    }
    bool precedes(BagId a, BagId b) const { return rank[a] < rank[b]; }
};

struct PredecessorCase {
    std::optional<Color> p;  // nullopt encodes the bottom value
    int t = 3;
};

/// p_Z(X,Y) and t_Z(X,Y) for Z in B_h(X) and B_h(Y).
inline PredecessorCase p_and_t(const PlantedTree& pt, const BagColoring& phi, std::size_t h,
                  const BagOrder& prec, BagId x, BagId y, BagId z) {
    if (!pt.close(h, x, z) || !pt.close(h, y, z))
        throw PreconditionError("Z must lie in B_h(X) and B_h(Y)");
    const TauSequence seq = oplus(tau(pt, phi, h, x), tau(pt, phi, h, y));
    const auto at = std::find(seq.begin(), seq.end(), phi.phi[z]);
    if (at == seq.end()) throw InternalError("color of Z missing from tau(X)+tau(Y)");
    if (at == seq.begin()) return {std::nullopt, 3};
    const Color p = *(at - 1);
    auto unique_above = [&](BagId from) {
        std::optional<BagId> found;
        std::size_t hits = 0;
        pt.close_set(h, from).for_each([&](std::size_t b) {
            if (phi.phi[b] == p && pt.below(z, b)) {
                found = b;
                ++hits;
            }
        });
        if (hits != 1) throw InternalError("bag with color preceding Z is not unique");
        return *found;
    };
    const BagId xp = unique_above(x), yp = unique_above(y);
    if (xp == yp) return {p, 3};
    return {p, prec.precedes(xp, yp) ? 1 : 2};
}

/// One gadget: an adhesion set and the vertices attached to it.
struct GadgetBag {
    std::vector<Element> adhesion;
    std::vector<Element> gadget_vertices;
};

/// Adds K plus its gadget vertices as a new bag hanging off a bag that
/// contains K. `t` decomposes the torso of the bag (adhesion sets are cliques
/// there); the result decomposes the extension's cover graph on
/// `new_vertex_count` vertices.
inline TreeDecomposition widen_with_gadget_bags(const TreeDecomposition& t,
                                                const std::vector<GadgetBag>& layout,
                                                std::size_t new_vertex_count) {
    TreeDecomposition out = t;
    out.vertex_count = new_vertex_count;
    for (const auto& g : layout) {
        if (g.gadget_vertices.empty()) continue;
        std::optional<BagId> host;
        for (BagId b = 0; b < t.bag_count() && !host; ++b)
            if (std::includes(t.bags[b].begin(), t.bags[b].end(), g.adhesion.begin(), g.adhesion.end()))
                host = b;
        if (!host) throw PreconditionError("no bag contains an adhesion set");
        std::vector<Element> bag = g.adhesion;
        bag.insert(bag.end(), g.gadget_vertices.begin(), g.gadget_vertices.end());
        std::sort(bag.begin(), bag.end());
        bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
        out.bags.push_back(std::move(bag));
        out.edges.emplace_back(*host, out.bags.size() - 1);
    }
    return out;
}

}  // namespace posetdim
