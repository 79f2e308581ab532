#pragma once

// Coloring combinators: breadth-first layering of the comparability graph
// with per-layer contraction, removal of an apex, and disjoint components.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poset.hpp"
#include "solver.hpp"

namespace posetdim {

inline bool cover_graph_connected(const Poset& p) {
    if (p.size() == 0) return true;
    const auto adj = cover_graph(p).adjacency();
    std::vector<bool> seen(p.size(), false);
    std::vector<Element> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const Element u = stack.back();
        stack.pop_back();
        for (Element w : adj[u])
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == p.size();
}

/// Component index per element (components of the cover graph, numbered by
/// smallest member).
inline std::vector<std::size_t> components(const Poset& p) {
    const auto adj = cover_graph(p).adjacency();
    std::vector<std::size_t> comp(p.size(), p.size());
    std::size_t next = 0;
    for (Element s = 0; s < p.size(); ++s) {
        if (comp[s] != p.size()) continue;
        std::vector<Element> stack{s};
        comp[s] = next;
        while (!stack.empty()) {
            const Element u = stack.back();
            stack.pop_back();
            for (Element w : adj[u])
                if (comp[w] == p.size()) {
                    comp[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    return comp;
}

/// P_i for one layer i >= 1. For i >= 2 index 0 is the contracted vertex v'
/// standing for A_0..A_{i-2}.
struct LayerPoset {
    std::size_t index = 1;
    Poset poset;
    std::vector<std::optional<Element>> to_parent;  // nullopt for v'
};

struct Layering {
    Element source = 0;
    std::vector<std::size_t> layer_of;         // per element
    std::vector<std::vector<Element>> layers;  // A_0 .. A_n
    std::vector<LayerPoset> posets;            // P_1 .. P_n at positions 0 .. n-1
};

/// Checks the five distance-layer properties; returns a description of the
/// first violation.
inline std::optional<std::string> check_layer_properties(const Poset& p, const Layering& l) {
    for (Element x = 0; x < p.size(); ++x) {
        const std::size_t i = l.layer_of[x];
        bool has_lower_neighbor = false;
        for (Element y = 0; y < p.size(); ++y) {
            if (x == y || !p.comparable(x, y)) continue;
            const std::size_t j = l.layer_of[y];
            if (i >= j + 2 || j >= i + 2) return "comparable elements two layers apart";
            if (j + 1 == i) {
                if (i % 2 == 1 && !p.lt(y, x)) return "odd layer element below previous layer";
                if (i % 2 == 0 && !p.lt(x, y)) return "even layer element above previous layer";
                has_lower_neighbor = true;
            }
        }
        if (i > 0 && !has_lower_neighbor) return "element without a comparable element in the previous layer";
        if (i == 0 && x != l.source) return "layer 0 holds more than the source";
    }
    return std::nullopt;
}

/// Distance layers A_i of the comparability graph from a minimal source
/// and the layer posets P_i.
inline Layering layer_posets(const Poset& p, Element source) {
    if (source >= p.size()) throw DomainError("source out of range");
    if (!p.is_minimal(source)) throw PreconditionError("layer source must be a minimal element");
    if (!cover_graph_connected(p)) throw ConnectivityError("cover graph is disconnected");
    Layering l;
    l.source = source;
    const std::size_t n = p.size();
    l.layer_of.assign(n, n);
    l.layer_of[source] = 0;
    l.layers.push_back({source});
    while (true) {
        std::vector<Element> next;
        for (Element x = 0; x < n; ++x) {
            if (l.layer_of[x] != n) continue;
            const bool touches = std::any_of(l.layers.back().begin(), l.layers.back().end(),
                                             [&](Element y) { return p.comparable(x, y); });
            if (touches) next.push_back(x);
        }
        if (next.empty()) break;
        for (Element x : next) l.layer_of[x] = l.layers.size();
        l.layers.push_back(std::move(next));
    }
    if (auto bad = check_layer_properties(p, l)) throw InternalError("layering: " + *bad);

    for (std::size_t i = 1; i < l.layers.size(); ++i) {
        LayerPoset lp;
        lp.index = i;
        std::vector<Element> members = l.layers[i - 1];
        members.insert(members.end(), l.layers[i].begin(), l.layers[i].end());
        std::sort(members.begin(), members.end());
        const bool contracted = i >= 2;
        const std::size_t offset = contracted ? 1 : 0;
        if (contracted) lp.to_parent.push_back(std::nullopt);
        for (Element x : members) lp.to_parent.push_back(x);
        std::vector<Arc> arcs;
        std::vector<std::string> labels;
        if (contracted) labels.push_back("v'");
        for (std::size_t a = 0; a < members.size(); ++a) {
            labels.push_back(p.label(members[a]));
            for (std::size_t b = 0; b < members.size(); ++b)
                if (p.lt(members[a], members[b])) arcs.emplace_back(a + offset, b + offset);
        }
        if (contracted)
            for (std::size_t a = 0; a < members.size(); ++a)
                if (l.layer_of[members[a]] == i - 1) {
                    if (i % 2 == 0)
                        arcs.emplace_back(0, a + offset);
                    else
                        arcs.emplace_back(a + offset, 0);
                }
        lp.poset = Poset::from_relations(members.size() + offset, arcs, std::move(labels));
        if (contracted)
            for (std::size_t a = 0; a < members.size(); ++a)
                if (l.layer_of[members[a]] == i && lp.poset.comparable(0, a + offset))
                    throw InternalError("contracted vertex comparable to the top layer");
        l.posets.push_back(std::move(lp));
    }
    return l;
}

/// Combines valid colorings of every P_i (colors in [0,d)) into a coloring
/// of Inc(P): even layers keep colors 0..d-1, odd layers shift to d..2d-1,
/// pairs two or more layers apart get 2d (x higher) or 2d+1 (y higher).
inline PairColoring diameter_combine(const Poset& p, const Layering& l,
                                     const std::vector<PairColoring>& layer_colorings, std::size_t d) {
    if (layer_colorings.size() != l.posets.size()) throw DomainError("one coloring per layer poset expected");
    std::vector<std::vector<std::optional<Element>>> local(l.posets.size());
    for (std::size_t k = 0; k < l.posets.size(); ++k) {
        local[k].assign(p.size(), std::nullopt);
        const auto& tp = l.posets[k].to_parent;
        for (std::size_t a = 0; a < tp.size(); ++a)
            if (tp[a]) local[k][*tp[a]] = a;
        for (const auto& [q, c] : layer_colorings[k].entries())
            if (c < 0 || static_cast<std::size_t>(c) >= d) throw DomainError("layer color outside [0,d)");
    }
    PairColoring out(p.size());
    const Color dc = static_cast<Color>(d);
    for (const auto& q : incomparable_pairs(p)) {
        const std::size_t i = l.layer_of[q.first], j = l.layer_of[q.second];
        if (i >= j + 2) {
            out.set(q, 2 * dc);
            continue;
        }
        if (j >= i + 2) {
            out.set(q, 2 * dc + 1);
            continue;
        }
        const std::size_t layer = std::max(i, j);
        const std::size_t k = layer - 1;
        const auto c = layer_colorings[k].get({*local[k][q.first], *local[k][q.second]});
        if (!c) throw CoverageError("layer coloring misses a pair");
        out.set(q, layer % 2 == 0 ? *c : dc + *c);
    }
    const auto verdict = is_valid_coloring(p, out);
    if (!verdict.valid) throw ValidityError("layer combination produced a monochromatic alternating cycle");
    return out;
}

struct ReductionResult {
    PairColoring coloring;
    std::size_t d = 1;        // largest sub-dimension
    std::size_t palette = 0;  // distinct colors used
};

/// Layers from `source` (default: lowest-index minimal element), solves each
/// P_i exactly and combines.
inline ReductionResult diameter_reduce(const Poset& p, std::optional<Element> source = {},
                                       const SolverOptions& opt = {}) {
    Element v = 0;
    if (source) {
        v = *source;
    } else {
        while (v < p.size() && !p.is_minimal(v)) ++v;
    }
    const auto l = layer_posets(p, v);
    std::vector<PairColoring> cols;
    std::size_t d = 1;
    for (const auto& lp : l.posets) {
        auto r = exact_dimension(lp.poset, opt);
        d = std::max(d, r.dimension);
        cols.push_back(std::move(r.witness));
    }
    auto c = diameter_combine(p, l, cols, d);
    const std::size_t used = c.color_count();
    return {std::move(c), d, used};
}

/// Merges colorings of P - ↑a (colors A) and P - ↓a (colors B, disjoint
/// from A); pairs (a,·) and (·,a) get one fresh color each.
inline PairColoring apex_combine(const Poset& p, Element a, const Subposet& without_up,
                                 const PairColoring& coloring_up, const Subposet& without_down,
                                 const PairColoring& coloring_down) {
    if (a >= p.size()) throw DomainError("apex out of range");
    Color top = -1;
    std::vector<Color> palette_a, palette_b;
    for (const auto& [q, c] : coloring_up.entries()) palette_a.push_back(c), top = std::max(top, c);
    for (const auto& [q, c] : coloring_down.entries()) palette_b.push_back(c), top = std::max(top, c);
    std::sort(palette_a.begin(), palette_a.end());
    std::sort(palette_b.begin(), palette_b.end());
    palette_a.erase(std::unique(palette_a.begin(), palette_a.end()), palette_a.end());
    palette_b.erase(std::unique(palette_b.begin(), palette_b.end()), palette_b.end());
    std::vector<Color> shared;
    std::set_intersection(palette_a.begin(), palette_a.end(), palette_b.begin(), palette_b.end(),
                          std::back_inserter(shared));
    if (!shared.empty()) throw DomainError("apex sub-colorings must use disjoint palettes");

    PairColoring out(p.size());
    for (const auto& [q, c] : coloring_up.entries())
        out.set({without_up.to_parent[q.first], without_up.to_parent[q.second]}, c);
    for (const auto& [q, c] : coloring_down.entries()) {
        const IncPair g{without_down.to_parent[q.first], without_down.to_parent[q.second]};
        if (!out.contains(g)) out.set(g, c);
    }
    for (const auto& q : incomparable_pairs(p)) {
        if (q.first == a)
            out.set(q, top + 1);
        else if (q.second == a)
            out.set(q, top + 2);
        else if (!out.contains(q))
            throw CoverageError("apex combination misses pair (" + p.label(q.first) + "," +
                                p.label(q.second) + ")");
    }
    const auto verdict = is_valid_coloring(p, out);
    if (!verdict.valid) throw ValidityError("apex combination produced a monochromatic alternating cycle");
    return out;
}

struct ApexResult {
    PairColoring coloring;
    std::size_t palette_up = 0;
    std::size_t palette_down = 0;
    std::size_t palette = 0;
};

inline ApexResult apex_reduce(const Poset& p, Element a, const SolverOptions& opt = {}) {
    if (a >= p.size()) throw DomainError("apex out of range");
    Bitset keep_up(p.size()), keep_down(p.size());
    for (Element x = 0; x < p.size(); ++x) {
        if (!p.le(a, x)) keep_up.set(x);
        if (!p.le(x, a)) keep_down.set(x);
    }
    const auto sub_up = induced_subposet(p, keep_up);
    const auto sub_down = induced_subposet(p, keep_down);
    auto cu = exact_dimension(sub_up.poset, opt).witness;
    auto cd = exact_dimension(sub_down.poset, opt).witness;
    const Color shift = static_cast<Color>(cu.color_count());
    PairColoring shifted(cd.universe());
    for (const auto& [q, c] : cd.entries()) shifted.set(q, c + shift);
    ApexResult r;
    r.palette_up = cu.color_count();
    r.palette_down = shifted.color_count();
    r.coloring = apex_combine(p, a, sub_up, cu, sub_down, shifted);
    r.palette = r.coloring.color_count();
    return r;
}

/// Colors a poset from colorings of its cover-graph components: pairs inside
/// a component keep their color, pairs across components get two extra
/// colors by component order.
inline PairColoring components_combine(const Poset& p, const std::vector<std::size_t>& comp,
                                       const std::vector<Subposet>& parts,
                                       const std::vector<PairColoring>& part_colorings) {
    Color top = -1;
    PairColoring out(p.size());
    for (std::size_t k = 0; k < parts.size(); ++k)
        for (const auto& [q, c] : part_colorings[k].entries()) {
            out.set({parts[k].to_parent[q.first], parts[k].to_parent[q.second]}, c);
            top = std::max(top, c);
        }
    for (const auto& q : incomparable_pairs(p)) {
        if (comp[q.first] == comp[q.second]) {
            if (!out.contains(q)) throw CoverageError("component coloring misses a pair");
            continue;
        }
        out.set(q, comp[q.first] < comp[q.second] ? top + 1 : top + 2);
    }
    const auto verdict = is_valid_coloring(p, out);
    if (!verdict.valid) throw ValidityError("component combination produced a monochromatic alternating cycle");
    return out;
}

/// Diameter reduction applied per component, then combined.
inline ReductionResult layered_reduce(const Poset& p, std::optional<Element> source = {},
                                      const SolverOptions& opt = {}) {
    const auto comp = components(p);
    const std::size_t nc = p.size() == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    if (nc <= 1) return diameter_reduce(p, source, opt);
    std::vector<Subposet> parts;
    std::vector<PairColoring> cols;
    std::size_t d = 1;
    for (std::size_t k = 0; k < nc; ++k) {
        std::vector<Element> members;
        for (Element x = 0; x < p.size(); ++x)
            if (comp[x] == k) members.push_back(x);
        parts.push_back(induced_subposet(p, std::span<const Element>(members)));
        std::optional<Element> local_source;
        if (source && comp[*source] == k)
            local_source = static_cast<Element>(
                std::find(members.begin(), members.end(), *source) - members.begin());
        auto r = diameter_reduce(parts.back().poset, local_source, opt);
        d = std::max(d, r.d);
        cols.push_back(std::move(r.coloring));
    }
    auto c = components_combine(p, comp, parts, cols);
    const std::size_t used = c.color_count();
    return {std::move(c), d, used};
}

}  // namespace posetdim
