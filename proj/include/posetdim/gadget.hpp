#pragma once

// Weak and strong gadget extensions of bag subposets.
//
// For a bag Z, every adhesion set K of Z receives a gadget: one minimal
// vertex x[K,S] per up-trace S = Z ∩ ↑x of an outside vertex x routed
// through K, and one maximal vertex y[K,S] per down-trace. Both extensions
// keep P[Z]; they differ in when x[K,S] < y[K',S'].

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "errors.hpp"
#include "poset.hpp"
#include "tree_decomposition.hpp"

namespace posetdim {

enum class GadgetKind { up, down };
enum class Variant { weak, strong };

/// Adhesion sets of a bag and, for each outside vertex, the one it is
/// routed through.
struct AdhesionFamily {
    BagId bag = 0;
    std::vector<std::vector<Element>> sets;                 // deduplicated, sorted
    std::vector<std::optional<std::size_t>> toward;         // per vertex; nullopt inside Z

    /// K_Z(x); precondition: x outside the bag.
    const std::vector<Element>& of(Element x) const { return sets[*toward[x]]; }
};

inline AdhesionFamily adhesion_family(const TreeDecomposition& t, BagId z) {
    AdhesionFamily f;
    f.bag = z;
    f.toward.assign(t.vertex_count, std::nullopt);
    const auto adj = t.neighbors();
    const Bitset inside = t.bag_set(z);
    std::map<std::vector<Element>, std::size_t> index;
    for (BagId nb : adj[z]) {
        auto k = intersect_sorted(t.bags[z], t.bags[nb]);
        auto [it, fresh] = index.try_emplace(k, f.sets.size());
        if (fresh) f.sets.push_back(k);
        const std::size_t ki = it->second;
        // Walk the component of T - Z containing nb.
        std::vector<BagId> stack{nb};
        std::vector<bool> seen(t.bag_count(), false);
        seen[z] = seen[nb] = true;
        while (!stack.empty()) {
            const BagId b = stack.back();
            stack.pop_back();
            for (Element x : t.bags[b]) {
                if (inside.test(x)) continue;
                if (f.toward[x] && *f.toward[x] != ki && f.sets[*f.toward[x]] != k)
                    throw PreconditionError("vertex " + std::to_string(x + 1) +
                                            " occurs on two sides of a bag");
                f.toward[x] = ki;
            }
            for (BagId c : adj[b])
                if (!seen[c]) {
                    seen[c] = true;
                    stack.push_back(c);
                }
        }
    }
    return f;
}

/// Z ∩ ↑x (kind up) or Z ∩ ↓x (kind down), sorted.
inline std::vector<Element> trace(const Poset& p, const Bitset& zset, Element x, GadgetKind kind) {
    Bitset s = kind == GadgetKind::up ? up_set(p, x) : down_set(p, x);
    s &= zset;
    return s.members();
}

/// U is a K-up-set of P[Z] (K-down-set for kind down): an up-set of P[Z]
/// generated by its members in K.
inline bool is_k_trace(const Poset& p, const std::vector<Element>& zbag, const std::vector<Element>& k,
                       const std::vector<Element>& u, GadgetKind kind) {
    std::vector<Element> gen;
    for (Element z : zbag) {
        const bool in_u = std::binary_search(u.begin(), u.end(), z);
        bool generated = false;
        for (Element g : u)
            if (std::binary_search(k.begin(), k.end(), g) &&
                (kind == GadgetKind::up ? p.le(g, z) : p.le(z, g)))
                generated = true;
        if (in_u != generated) return false;
    }
    return true;
}

/// Traces realized by outside vertices routed through family.sets[ki],
/// sorted lexicographically; each is re-checked to be a K-up-set/K-down-set.
inline std::vector<std::vector<Element>> realized_traces(const Poset& p, const TreeDecomposition& t,
                                                         const AdhesionFamily& f, std::size_t ki,
                                                         GadgetKind kind) {
    const Bitset zset = t.bag_set(f.bag);
    std::vector<std::vector<Element>> out;
    for (Element x = 0; x < p.size(); ++x) {
        if (!f.toward[x] || *f.toward[x] != ki) continue;
        auto s = trace(p, zset, x, kind);
        if (!is_k_trace(p, t.bags[f.bag], f.sets[ki], s, kind))
            throw InternalError("outside trace is not generated by its adhesion set");
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<std::vector<Element>> realized_up_sets(const Poset& p, const TreeDecomposition& t,
                                                          const AdhesionFamily& f, std::size_t ki) {
    return realized_traces(p, t, f, ki, GadgetKind::up);
}
inline std::vector<std::vector<Element>> realized_down_sets(const Poset& p, const TreeDecomposition& t,
                                                            const AdhesionFamily& f, std::size_t ki) {
    return realized_traces(p, t, f, ki, GadgetKind::down);
}

struct GadgetVertex {
    GadgetKind kind;
    std::size_t family_index;    // index into AdhesionFamily::sets
    std::vector<Element> trace;  // S, global ids
    std::size_t ident = 0;       // id_Z, 1-based; up vertices only

    auto key() const { return std::tie(kind, family_index, trace); }
};

/// P_Z (weak) or P'_Z (strong). Extension indices: [0, |Z|) are the bag's
/// vertices in sorted order, followed by the gadget vertices.
class GadgetExtension {
public:
    Variant variant() const { return variant_; }
    BagId bag() const { return family_.bag; }
    const AdhesionFamily& family() const { return family_; }
    const Poset& order() const { return order_; }
    std::size_t size() const { return order_.size(); }
    std::size_t base_size() const { return base_.size(); }
    const std::vector<Element>& base() const { return base_; }
    const std::vector<GadgetVertex>& gadgets() const { return gadgets_; }
    const GadgetVertex& gadget(std::size_t v) const { return gadgets_[v - base_.size()]; }
    bool is_gadget(std::size_t v) const { return v >= base_.size(); }

    /// μ_Z(x): x itself inside Z, otherwise x[K_Z(x), Z ∩ ↑x].
    std::size_t mu(Element x) const { return mu_[x]; }
    /// ν_Z(y): y itself inside Z, otherwise y[K_Z(y), Z ∩ ↓y].
    std::size_t nu(Element y) const { return nu_[y]; }

    /// π_Z(x,y): 1 when both are outside and routed through the same adhesion set.
    int pi(Element x, Element y) const {
        const auto& tw = family_.toward;
        return tw[x] && tw[y] && *tw[x] == *tw[y] ? 1 : 2;
    }

    /// id_Z of an up gadget vertex (extension index).
    std::size_t ident(std::size_t v) const {
        if (!is_gadget(v) || gadget(v).kind != GadgetKind::up)
            throw DomainError("identifiers exist only for up gadget vertices");
        return gadget(v).ident;
    }

    /// Gadget vertices (extension indices) grouped per adhesion set, with
    /// the adhesion set mapped to extension indices.
    std::vector<GadgetBag> layout() const {
        std::vector<GadgetBag> out(family_.sets.size());
        for (std::size_t k = 0; k < family_.sets.size(); ++k)
            for (Element v : family_.sets[k]) out[k].adhesion.push_back(local(v));
        for (std::size_t i = 0; i < gadgets_.size(); ++i)
            out[gadgets_[i].family_index].gadget_vertices.push_back(base_.size() + i);
        return out;
    }

    /// Extension index of a bag vertex.
    std::size_t local(Element v) const {
        const auto it = std::lower_bound(base_.begin(), base_.end(), v);
        if (it == base_.end() || *it != v) throw DomainError("vertex is not in the bag");
        return static_cast<std::size_t>(it - base_.begin());
    }

    friend GadgetExtension build_extension(const Poset&, const TreeDecomposition&, BagId, Variant,
                                           const AdhesionFamily*);

private:
    Variant variant_ = Variant::weak;
    AdhesionFamily family_;
    std::vector<Element> base_;
    std::vector<GadgetVertex> gadgets_;
    std::vector<std::size_t> mu_, nu_;
    Poset order_;
};

inline std::string set_label(const Poset& p, const std::vector<Element>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + p.label(s[i]);
    return out + "}";
}

/// Builds the weak or strong gadget extension of P[Z]. The defining
/// relation is materialized and checked to be a strict partial order.
inline GadgetExtension build_extension(const Poset& p, const TreeDecomposition& t, BagId z,
                                       Variant variant, const AdhesionFamily* family = nullptr) {
    GadgetExtension e;
    e.variant_ = variant;
    e.family_ = family ? *family : adhesion_family(t, z);
    e.base_ = t.bags[z];
    const auto& f = e.family_;

    for (std::size_t k = 0; k < f.sets.size(); ++k) {
        std::size_t id = 0;
        for (auto& s : realized_up_sets(p, t, f, k)) e.gadgets_.push_back({GadgetKind::up, k, s, ++id});
        for (auto& s : realized_down_sets(p, t, f, k)) e.gadgets_.push_back({GadgetKind::down, k, s, 0});
    }
    std::sort(e.gadgets_.begin(), e.gadgets_.end(),
              [](const GadgetVertex& a, const GadgetVertex& b) { return a.key() < b.key(); });

    const std::size_t nz = e.base_.size();
    const std::size_t n = nz + e.gadgets_.size();
    std::vector<Bitset> up(n, Bitset(n));
    for (std::size_t i = 0; i < nz; ++i)
        for (std::size_t j = 0; j < nz; ++j)
            if (p.lt(e.base_[i], e.base_[j])) up[i].set(j);
    for (std::size_t gi = 0; gi < e.gadgets_.size(); ++gi) {
        const auto& g = e.gadgets_[gi];
        for (Element v : g.trace) {
            const std::size_t lv = e.local(v);
            if (g.kind == GadgetKind::up)
                up[nz + gi].set(lv);
            else
                up[lv].set(nz + gi);
        }
    }
    for (std::size_t a = 0; a < e.gadgets_.size(); ++a) {
        const auto& ga = e.gadgets_[a];
        if (ga.kind != GadgetKind::up) continue;
        for (std::size_t b = 0; b < e.gadgets_.size(); ++b) {
            const auto& gb = e.gadgets_[b];
            if (gb.kind != GadgetKind::down) continue;
            std::vector<Element> common = intersect_sorted(ga.trace, gb.trace);
            const bool linked = !common.empty() ||
                                (variant == Variant::strong && ga.family_index == gb.family_index);
            if (linked) up[nz + a].set(nz + b);
        }
    }
    std::vector<std::string> labels;
    for (Element v : e.base_) labels.push_back(p.label(v));
    for (const auto& g : e.gadgets_)
        labels.push_back(std::string(g.kind == GadgetKind::up ? "x" : "y") + "[" +
                         set_label(p, f.sets[g.family_index]) + ";" + set_label(p, g.trace) + "]");
    e.order_ = Poset::from_up_sets(std::move(up), std::move(labels));

    auto find_gadget = [&](GadgetKind kind, std::size_t k, const std::vector<Element>& s) {
        const auto it = std::find_if(e.gadgets_.begin(), e.gadgets_.end(), [&](const GadgetVertex& g) {
            return g.kind == kind && g.family_index == k && g.trace == s;
        });
        if (it == e.gadgets_.end()) throw InternalError("missing gadget vertex");
        return nz + static_cast<std::size_t>(it - e.gadgets_.begin());
    };
    const Bitset zset = t.bag_set(z);
    e.mu_.resize(p.size());
    e.nu_.resize(p.size());
    for (Element x = 0; x < p.size(); ++x) {
        if (zset.test(x)) {
            e.mu_[x] = e.nu_[x] = e.local(x);
            continue;
        }
        const std::size_t k = *f.toward[x];
        e.mu_[x] = find_gadget(GadgetKind::up, k, trace(p, zset, x, GadgetKind::up));
        e.nu_[x] = find_gadget(GadgetKind::down, k, trace(p, zset, x, GadgetKind::down));
    }
    return e;
}

/// Both extensions of one bag, sharing the adhesion family.
struct ExtensionPair {
    GadgetExtension weak;
    GadgetExtension strong;
};

inline ExtensionPair build_extensions(const Poset& p, const TreeDecomposition& t, BagId z) {
    const AdhesionFamily f = adhesion_family(t, z);
    return {build_extension(p, t, z, Variant::weak, &f), build_extension(p, t, z, Variant::strong, &f)};
}

struct StructureVerdict {
    bool valid = true;
    std::string reason;
    std::optional<Arc> edge;
};

/// Checks that a graph on `n` vertices, with `base_size` vertices forming Z
/// and the gadget layout partitioning the rest, belongs to E_s: every
/// |K| <= s, |X_K| <= 2^{s+1}, and every edge touching X_K stays in K ∪ X_K.
inline StructureVerdict check_E_s_structure(const CoverGraph& g, std::size_t base_size,
                                            const std::vector<GadgetBag>& layout, std::size_t s) {
    StructureVerdict v;
    std::vector<std::optional<std::size_t>> part(g.n);
    for (std::size_t k = 0; k < layout.size(); ++k) {
        const auto& gb = layout[k];
        if (gb.adhesion.size() > s) return {false, "adhesion set larger than s", std::nullopt};
        if (gb.gadget_vertices.size() > (std::size_t{2} << s))
            return {false, "gadget larger than 2^(s+1)", std::nullopt};
        for (Element a : gb.adhesion)
            if (a >= base_size) return {false, "adhesion set leaves Z", std::nullopt};
        for (Element x : gb.gadget_vertices) {
            if (x < base_size || x >= g.n || part[x]) return {false, "gadgets do not partition V - Z", std::nullopt};
            part[x] = k;
        }
    }
    for (Element x = base_size; x < g.n; ++x)
        if (!part[x]) return {false, "vertex outside Z belongs to no gadget", std::nullopt};
    auto allowed = [&](Element gadget_vertex, Element other) {
        const auto& gb = layout[*part[gadget_vertex]];
        if (other >= base_size) return part[other] == part[gadget_vertex];
        return std::find(gb.adhesion.begin(), gb.adhesion.end(), other) != gb.adhesion.end();
    };
    for (const auto& [a, b] : g.edges) {
        if ((a >= base_size && !allowed(a, b)) || (b >= base_size && !allowed(b, a)))
            return {false, "edge leaves its gadget", Arc{a, b}};
    }
    return v;
}

}  // namespace posetdim
