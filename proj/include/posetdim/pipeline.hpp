#pragma once

// Signature coloring of Inc(P) for a poset with a tree decomposition of its
// cover graph. Pairs far apart in the planted tree go to four reserved
// colors; every other pair is colored by its signature, built from the bag
// coloring phi and from valid colorings of the weak and strong gadget
// extensions of the bags it meets.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gadget.hpp"
#include "poset.hpp"
#include "solver.hpp"
#include "tree_decomposition.hpp"

namespace posetdim {

/// I_1..I_4 (pairs far apart in the planted tree) and the remaining set I.
struct FarPairSets {
    std::array<std::vector<IncPair>, 4> far;
    std::vector<IncPair> near;
    /// Index j (0..3) of the first far set containing the pair, per pair of `all`.
    std::vector<IncPair> all;
    std::vector<int> first_far;
};

inline FarPairSets far_pair_sets(const Poset& p, const PlantedTree& pt, std::size_t h) {
    FarPairSets out;
    const std::size_t k = h == 0 ? 0 : h - 1;
    auto all_after = [&](std::size_t label_of_low, const Bitset& bags, bool use_r) {
        bool ok = true;
        bags.for_each([&](std::size_t b) {
            const std::size_t lb = use_r ? pt.r(b) : pt.ell(b);
            if (!(label_of_low < lb)) ok = false;
        });
        return ok;
    };
    for (const auto& q : incomparable_pairs(p)) {
        const BagId lx = pt.low(q.first), ly = pt.low(q.second);
        const std::array<bool, 4> in = {
            all_after(pt.ell(lx), pt.close_set(k, ly), false),
            all_after(pt.r(lx), pt.close_set(k, ly), true),
            all_after(pt.ell(ly), pt.close_set(k, lx), false),
            all_after(pt.r(ly), pt.close_set(k, lx), true),
        };
        int first = -1;
        for (int j = 3; j >= 0; --j)
            if (in[static_cast<std::size_t>(j)]) {
                out.far[static_cast<std::size_t>(j)].push_back(q);
                first = j;
            }
        out.all.push_back(q);
        out.first_far.push_back(first);
        if (first < 0) out.near.push_back(q);
    }
    return out;
}

/// Gadget extensions of one bag with valid colorings of their pairs.
struct BagData {
    ExtensionPair ext;
    PairColoring sigma;         // on Inc of the weak extension
    PairColoring sigma_strong;  // on Inc of the strong extension
    std::size_t dim_weak = 1;
    std::size_t dim_strong = 1;
};

/// Builds both extensions of every bag and colors them with the exact
/// solver. `jobs` > 1 solves bags on worker threads; results are stored by
/// bag index so output does not depend on scheduling.
inline std::vector<BagData> prepare_bags(const Poset& p, const TreeDecomposition& t,
                                         const SolverOptions& opt = {}, std::size_t jobs = 1) {
    std::vector<std::optional<BagData>> slots(t.bag_count());
    std::vector<std::exception_ptr> errors(t.bag_count());
    auto work = [&](BagId z) {
        try {
            auto ext = build_extensions(p, t, z);
            auto w = exact_dimension(ext.weak.order(), opt);
            auto s = exact_dimension(ext.strong.order(), opt);
            slots[z] = BagData{std::move(ext), std::move(w.witness), std::move(s.witness), w.dimension,
                               s.dimension};
        } catch (...) {
            errors[z] = std::current_exception();
        }
    };
    if (jobs <= 1) {
        for (BagId z = 0; z < t.bag_count(); ++z) work(z);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (std::size_t z; (z = next++) < t.bag_count();) work(z);
            });
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<BagData> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

/// Per-phi-color entry of a signature.
struct SignatureRecord {
    static constexpr Color kUndefined = -1;

    Color phi = 0;
    Color sigma = 0;
    Color sigma_strong = kUndefined;  // undefined exactly when pi == 1
    int pi = 2;
    int t = 3;
    std::optional<std::size_t> ident;  // absent exactly when Z = low(x)

    friend auto operator<=>(const SignatureRecord&, const SignatureRecord&) = default;
};

struct Signature {
    TauSequence tau_x;
    TauSequence tau_y;
    std::vector<SignatureRecord> records;  // sorted by phi color

    /// Fixed-width little-endian encoding; equal signatures give equal bytes.
    std::string serialize() const {
        std::string out;
        auto put = [&](std::int64_t v) {
            const auto u = static_cast<std::uint32_t>(static_cast<std::int32_t>(v));
            for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xFF));
        };
        put(static_cast<std::int64_t>(tau_x.size()));
        for (Color c : tau_x) put(c);
        put(static_cast<std::int64_t>(tau_y.size()));
        for (Color c : tau_y) put(c);
        put(static_cast<std::int64_t>(records.size()));
        for (const auto& r : records) {
            put(r.phi);
            put(r.sigma);
            put(r.sigma_strong);
            put(r.pi);
            put(r.t);
            put(r.ident ? static_cast<std::int64_t>(*r.ident) : -1);
        }
        return out;
    }

    friend auto operator<=>(const Signature&, const Signature&) = default;
};

/// Everything fixed once the tree is planted: phi, tau per bag, and the
/// bag order used to break ties.
struct PlantedContext {
    const Poset& poset;
    const PlantedTree& tree;
    std::size_t h;
    BagOrder prec;
    BagColoring phi;
    std::vector<TauSequence> taus;

    PlantedContext(const Poset& p, const PlantedTree& pt, std::size_t height, BagOrder order)
        : poset(p), tree(pt), h(height), prec(std::move(order)), phi(greedy_phi(pt, height)) {
        for (BagId b = 0; b < pt.bag_count(); ++b) taus.push_back(tau(pt, phi, h, b));
    }
};

/// Σ(x,y) for a pair of I. Throws InternalError when a proven property
/// (image pairs incomparable, unique predecessor bags) fails.
inline Signature signature(const PlantedContext& ctx, const std::vector<BagData>& bags, Element x,
                           Element y) {
    const auto& pt = ctx.tree;
    const BagId lx = pt.low(x), ly = pt.low(y);
    Signature sig{ctx.taus[lx], ctx.taus[ly], {}};
    const Bitset common = pt.close_set(ctx.h, lx) & pt.close_set(ctx.h, ly);
    common.for_each([&](std::size_t z) {
        const auto& bd = bags[z];
        SignatureRecord r;
        r.phi = ctx.phi.phi[z];
        const auto& weak = bd.ext.weak;
        const auto s = bd.sigma.get({weak.mu(x), weak.nu(y)});
        if (!s) throw InternalError("image pair has no weak-extension color");
        r.sigma = *s;
        r.pi = weak.pi(x, y);
        if (r.pi == 2) {
            const auto& strong = bd.ext.strong;
            const auto s2 = bd.sigma_strong.get({strong.mu(x), strong.nu(y)});
            if (!s2) throw InternalError("image pair has no strong-extension color");
            r.sigma_strong = *s2;
        }
        r.t = p_and_t(pt, ctx.phi, ctx.h, ctx.prec, lx, ly, z).t;
        if (z != lx) r.ident = weak.ident(weak.mu(x));
        sig.records.push_back(r);
    });
    std::sort(sig.records.begin(), sig.records.end(),
              [](const SignatureRecord& a, const SignatureRecord& b) { return a.phi < b.phi; });
    return sig;
}

inline constexpr Color kReservedColors = 4;

/// Coloring before verification, plus the signature buckets behind it.
struct AssembledColoring {
    PairColoring coloring;
    FarPairSets sets;
    std::vector<std::string> signatures;  // index i has color kReservedColors + i
    std::size_t phi_palette = 0;
};

/// Colors Inc(P): far pairs by the index of their first far set, the rest by
/// first-occurrence numbering of their serialized signature.
inline AssembledColoring assemble_coloring(const PlantedContext& ctx, const std::vector<BagData>& bags) {
    AssembledColoring out;
    out.coloring = PairColoring(ctx.poset.size());
    out.sets = far_pair_sets(ctx.poset, ctx.tree, ctx.h);
    out.phi_palette = ctx.phi.palette;
    std::map<std::string, Color> ids;
    for (std::size_t i = 0; i < out.sets.all.size(); ++i) {
        const IncPair q = out.sets.all[i];
        if (out.sets.first_far[i] >= 0) {
            out.coloring.set(q, out.sets.first_far[i]);
            continue;
        }
        if (!ctx.tree.meet_bag(ctx.h, ctx.tree.low(q.first), ctx.tree.low(q.second)))
            throw InternalError("near pair without a common close bag");
        auto key = signature(ctx, bags, q.first, q.second).serialize();
        auto [it, fresh] = ids.try_emplace(key, kReservedColors + static_cast<Color>(out.signatures.size()));
        if (fresh) out.signatures.push_back(std::move(key));
        out.coloring.set(q, it->second);
    }
    return out;
}

struct PipelineOptions {
    BagId root = 0;
    std::optional<std::vector<std::vector<BagId>>> child_order;
    std::optional<BagOrder> prec;
    SolverOptions solver;
    std::size_t jobs = 1;
};

struct PipelineReport {
    std::size_t height = 0;
    std::size_t adhesion = 0;
    std::size_t d = 1;  // max extension dimension over bags
    std::vector<std::pair<std::size_t, std::size_t>> bag_dims;   // (weak, strong)
    std::vector<std::pair<std::size_t, std::size_t>> bag_sizes;  // (bag, extension)
    std::size_t phi_palette = 0;
    std::array<std::size_t, 4> far_sizes{};
    std::size_t near_size = 0;
    std::size_t signatures = 0;
    std::size_t palette = 0;      // reserved colors + signatures
    std::size_t colors_used = 0;  // distinct colors in the output
    bool far_sets_reversible = true;
    bool valid = false;
};

struct PipelineResult {
    PairColoring coloring;
    PipelineReport report;
};

inline PipelineReport summarize(const std::vector<BagData>& bags, std::size_t h, std::size_t s) {
    PipelineReport rep;
    rep.height = h;
    rep.adhesion = s;
    for (const auto& b : bags) {
        rep.bag_dims.emplace_back(b.dim_weak, b.dim_strong);
        rep.bag_sizes.emplace_back(b.ext.weak.base_size(), b.ext.weak.size());
        rep.d = std::max({rep.d, b.dim_weak, b.dim_strong});
    }
    return rep;
}

/// Colors with precomputed bag data and verifies the result; throws
/// ValidityError when verification fails.
inline PipelineResult color_planted(const Poset& p, const TreeDecomposition& t,
                                    const std::vector<BagData>& bags, const PipelineOptions& opt,
                                    std::size_t adhesion) {
    const std::size_t h = height(p);
    const auto pt = PlantedTree::plant(t, opt.root, opt.child_order);
    PlantedContext ctx(p, pt, h, opt.prec.value_or(BagOrder::identity(t.bag_count())));
    auto assembled = assemble_coloring(ctx, bags);

    PipelineResult res{std::move(assembled.coloring), summarize(bags, h, adhesion)};
    auto& rep = res.report;
    rep.phi_palette = assembled.phi_palette;
    for (std::size_t j = 0; j < 4; ++j) {
        rep.far_sizes[j] = assembled.sets.far[j].size();
        if (contains_alternating_cycle(p, assembled.sets.far[j])) rep.far_sets_reversible = false;
    }
    rep.near_size = assembled.sets.near.size();
    rep.signatures = assembled.signatures.size();
    rep.palette = static_cast<std::size_t>(kReservedColors) + rep.signatures;
    rep.colors_used = res.coloring.color_count();
    const auto verdict = is_valid_coloring(p, res.coloring);
    if (!verdict.valid || !rep.far_sets_reversible)
        throw ValidityError("signature coloring contains a monochromatic alternating cycle");
    rep.valid = true;
    return res;
}

/// Full pipeline: validate the decomposition, build and solve every bag's
/// gadget extensions, plant, color, verify.
inline PipelineResult decompose_and_color(const Poset& p, const TreeDecomposition& t,
                                          const PipelineOptions& opt = {}) {
    const auto verdict = validate(t, cover_graph(p));
    if (!verdict.valid) throw PreconditionError("invalid tree decomposition: " + verdict.reason);
    if (t.bag_count() == 0) {
        PipelineResult empty{PairColoring(p.size()), {}};
        empty.report.valid = true;
        return empty;
    }
    const auto bags = prepare_bags(p, t, opt.solver, opt.jobs);
    return color_planted(p, t, bags, opt, verdict.adhesion);
}

}  // namespace posetdim
