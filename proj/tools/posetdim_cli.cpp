// posetdim: generate posets, compute dimension, run the decomposition
// pipeline and the reductions, check colorings, export DOT.
//
// Exit codes: 0 success, 1 verification failure, 2 bad input.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <posetdim.hpp>

namespace fs = std::filesystem;
using namespace posetdim;

namespace {

constexpr int kVerificationFailure = 1;
constexpr int kInputError = 2;

struct InputError : Error {
    using Error::Error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Poset load_poset(const std::string& path) {
    std::istringstream in(slurp(path));
    return io::read_poset(in);
}

TreeDecomposition load_td(const std::string& path) {
    std::istringstream in(slurp(path));
    return io::read_td(in);
}

template <class Writer>
void emit(const std::string& path, Writer&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    write(out);
}

std::string pair_text(const Poset& p, const IncPair& q) { return "(" + p.label(q.first) + "," + p.label(q.second) + ")"; }

void print_witness(const Poset& p, const ColoringVerdict& v) {
    std::cout << "valid: false\n";
    std::cout << "color: " << (v.color ? std::to_string(*v.color) : "?") << '\n';
    std::cout << "witness:";
    for (const auto& q : v.witness) std::cout << ' ' << pair_text(p, q);
    std::cout << '\n';
}

// ---- gen ----

struct GenArgs {
    std::string kind;
    std::size_t d = 3, n = 4, height = 3, max_bag = 4, max_adhesion = 2;
    std::string out;
};

int run_gen(const GenArgs& a, std::uint64_t seed) {
    NamedConstruction c;
    if (a.kind == "standard")
        c = standard_example(a.d);
    else if (a.kind == "kelly")
        c = kelly(a.n);
    else if (a.kind == "dm")
        c = dm_subsets(a.n);
    else {
        RandomPosetKnobs knobs;
        knobs.max_bag_size = a.max_bag;
        knobs.max_adhesion = a.max_adhesion;
        c = random_poset(seed, a.n, a.height, knobs);
    }
    emit(a.out, [&](std::ostream& o) { io::write_poset(o, c.poset); });
    // The decomposition needs a file of its own, so it is written only with -o.
    if (c.decomposition && !a.out.empty() && a.out != "-") {
        const std::string td = fs::path(a.out).replace_extension(".td").string();
        emit(td, [&](std::ostream& o) { io::write_td(o, *c.decomposition); });
    }
    return 0;
}

// ---- dim ----

struct DimArgs {
    std::string poset;
    bool oracle = false;
    std::optional<std::size_t> max_d;
    std::uint64_t budget = SolverOptions{}.node_budget;
    std::string out;
};

int run_dim(const DimArgs& a) {
    const auto p = load_poset(a.poset);
    SolverOptions opt;
    opt.max_d = a.max_d;
    opt.node_budget = a.budget;
    const auto r = exact_dimension(p, opt);
    std::cout << "dimension: " << r.dimension << '\n';
    if (!a.out.empty()) emit(a.out, [&](std::ostream& o) { io::write_coloring(o, r.witness); });
    if (a.oracle) {
        const std::size_t o = oracle_dimension(p);
        std::cout << "oracle: " << o << '\n';
        if (o != r.dimension) {
            std::cout << "mismatch: solver and oracle disagree\n";
            return kVerificationFailure;
        }
    }
    return 0;
}

// ---- decompose ----

struct DecomposeArgs {
    std::string poset, td, out;
    std::size_t root = 1;
    std::optional<std::uint64_t> order;
};

int run_decompose(const DecomposeArgs& a, std::size_t jobs) {
    const auto p = load_poset(a.poset);
    const auto t = load_td(a.td);
    PipelineOptions opt;
    opt.jobs = jobs;
    if (t.bag_count() > 0) {
        if (a.root < 1 || a.root > t.bag_count()) throw DomainError("root bag out of range");
        opt.root = static_cast<BagId>(a.root - 1);
    }
    if (a.order) {
        std::mt19937_64 rng(*a.order);
        const auto base = PlantedTree::plant(t, opt.root);
        std::vector<std::vector<BagId>> children(t.bag_count());
        for (BagId b = 0; b < t.bag_count(); ++b) {
            children[b] = base.children(b);
            std::shuffle(children[b].begin(), children[b].end(), rng);
        }
        opt.child_order = std::move(children);
        BagOrder prec = BagOrder::identity(t.bag_count());
        std::shuffle(prec.rank.begin(), prec.rank.end(), rng);
        opt.prec = std::move(prec);
    }
    PipelineResult res;
    try {
        res = decompose_and_color(p, t, opt);
    } catch (const ValidityError& e) {
        std::cout << "valid: false\n" << e.what() << '\n';
        return kVerificationFailure;
    }
    const auto& r = res.report;
    std::cout << "valid: " << (r.valid ? "true" : "false") << '\n'
              << "height: " << r.height << '\n'
              << "adhesion: " << r.adhesion << '\n'
              << "d: " << r.d << '\n'
              << "phi palette: " << r.phi_palette << '\n'
              << "far sets:";
    for (auto s : r.far_sizes) std::cout << ' ' << s;
    std::cout << '\n'
              << "near pairs: " << r.near_size << '\n'
              << "signatures: " << r.signatures << '\n'
              << "palette: " << r.palette << '\n'
              << "colors used: " << r.colors_used << '\n';
    for (std::size_t b = 0; b < r.bag_dims.size(); ++b)
        std::cout << "bag " << b + 1 << ": size " << r.bag_sizes[b].first << ", extension " << r.bag_sizes[b].second
                  << ", dims " << r.bag_dims[b].first << '/' << r.bag_dims[b].second << '\n';
    if (!a.out.empty()) emit(a.out, [&](std::ostream& o) { io::write_coloring(o, res.coloring); });
    return r.valid ? 0 : kVerificationFailure;
}

// ---- check ----

int run_check(const std::string& poset, const std::string& coloring) {
    const auto p = load_poset(poset);
    std::istringstream in(slurp(coloring));
    const auto c = io::read_coloring(in, p.size());
    ColoringVerdict v;
    try {
        v = is_valid_coloring(p, c);
    } catch (const TotalityError& e) {
        std::cout << "valid: false\nreason: " << e.what() << '\n';
        return kVerificationFailure;
    } catch (const MembershipError& e) {
        std::cout << "valid: false\nreason: " << e.what() << '\n';
        return kVerificationFailure;
    }
    if (!v.valid) {
        print_witness(p, v);
        return kVerificationFailure;
    }
    std::cout << "valid: true\ncolors: " << c.color_count() << '\n';
    return 0;
}

// ---- layers / apex ----

int run_layers(const std::string& poset, std::optional<std::size_t> source, const std::string& out) {
    const auto p = load_poset(poset);
    std::optional<Element> src;
    if (source) {
        if (*source < 1 || *source > p.size()) throw DomainError("source out of range");
        src = static_cast<Element>(*source - 1);
    }
    if (p.size() > 0 && cover_graph_connected(p)) {
        Element v = 0;
        if (src)
            v = *src;
        else
            while (!p.is_minimal(v)) ++v;
        const auto l = layer_posets(p, v);
        for (std::size_t i = 0; i < l.layers.size(); ++i) {
            std::cout << "A" << i << ":";
            for (Element x : l.layers[i]) std::cout << ' ' << p.label(x);
            std::cout << '\n';
        }
    }
    const auto r = layered_reduce(p, src);
    std::cout << "d: " << r.d << '\n' << "palette: " << r.palette << '\n' << "valid: true\n";
    if (!out.empty()) emit(out, [&](std::ostream& o) { io::write_coloring(o, r.coloring); });
    return 0;
}

int run_apex(const std::string& poset, std::size_t apex, const std::string& out) {
    const auto p = load_poset(poset);
    if (apex < 1 || apex > p.size()) throw DomainError("apex out of range");
    const auto r = apex_reduce(p, static_cast<Element>(apex - 1));
    std::cout << "palette without up-set: " << r.palette_up << '\n'
              << "palette without down-set: " << r.palette_down << '\n'
              << "palette: " << r.palette << '\n'
              << "valid: true\n";
    if (!out.empty()) emit(out, [&](std::ostream& o) { io::write_coloring(o, r.coloring); });
    return 0;
}

// ---- dot ----

int run_dot(const std::string& path, const std::string& out) {
    const std::string text = slurp(path);
    std::istringstream probe(text);
    bool is_td = false;
    for (std::string line; std::getline(probe, line);) {
        if (line.rfind("s td", 0) == 0) is_td = true;
        if (line.rfind("s ", 0) == 0 || line.rfind("p ", 0) == 0) break;
    }
    std::istringstream in(text);
    if (is_td) {
        const auto t = io::read_td(in);
        emit(out, [&](std::ostream& o) { io::write_dot(o, t); });
    } else {
        const auto p = io::read_poset(in);
        emit(out, [&](std::ostream& o) { io::write_dot(o, p); });
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Poset dimension toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    app.add_option("--seed", seed, "Seed for every random choice")->capture_default_str();
    app.add_option("--jobs", jobs, "Worker threads for per-bag solving")->check(CLI::PositiveNumber);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Write a poset (and its decomposition when one comes with it)");
    g->add_option("kind", gen.kind, "standard | kelly | dm | random")
        ->required()
        ->check(CLI::IsMember({"standard", "kelly", "dm", "random"}));
    g->add_option("--d", gen.d, "Standard example size")->capture_default_str();
    g->add_option("--n", gen.n, "Size parameter (kelly, dm) or element count (random)")->capture_default_str();
    g->add_option("--height", gen.height, "Target height (random)")->capture_default_str();
    g->add_option("--max-bag", gen.max_bag, "Largest bag (random)")->capture_default_str();
    g->add_option("--max-adhesion", gen.max_adhesion, "Largest adhesion (random)")->capture_default_str();
    g->add_option("-o,--output", gen.out, "Poset file; the decomposition goes next to it with suffix .td");

    DimArgs dim;
    auto* d = app.add_subcommand("dim", "Exact dimension");
    d->add_option("poset", dim.poset)->required();
    d->add_flag("--oracle", dim.oracle, "Cross-check against brute force over linear extensions");
    d->add_option("--max-d", dim.max_d, "Largest dimension tried");
    d->add_option("--budget", dim.budget, "Search nodes per decision problem")->capture_default_str();
    d->add_option("-o,--output", dim.out, "Write the optimal coloring");

    DecomposeArgs dec;
    auto* dc = app.add_subcommand("decompose", "Signature coloring from a tree decomposition");
    dc->add_option("poset", dec.poset)->required();
    dc->add_option("td", dec.td)->required();
    dc->add_option("--root", dec.root, "Root bag (1-based)")->capture_default_str();
    dc->add_option("--order", dec.order, "Seed for random child order and bag order");
    dc->add_option("-o,--output", dec.out, "Write the coloring");

    std::string check_poset, check_coloring;
    auto* ck = app.add_subcommand("check", "Verify a pair coloring");
    ck->add_option("poset", check_poset)->required();
    ck->add_option("coloring", check_coloring)->required();

    std::string layers_poset, layers_out;
    std::optional<std::size_t> layers_source;
    auto* ly = app.add_subcommand("layers", "Distance-layer reduction");
    ly->add_option("poset", layers_poset)->required();
    ly->add_option("--source", layers_source, "Minimal element to start from (1-based)");
    ly->add_option("-o,--output", layers_out, "Write the coloring");

    std::string apex_poset, apex_out;
    std::size_t apex = 0;
    auto* ap = app.add_subcommand("apex", "Apex reduction");
    ap->add_option("poset", apex_poset)->required();
    ap->add_option("--apex", apex, "Apex element (1-based)")->required();
    ap->add_option("-o,--output", apex_out, "Write the coloring");

    std::string dot_in, dot_out;
    auto* dt = app.add_subcommand("dot", "DOT export of a poset or a decomposition");
    dt->add_option("file", dot_in)->required();
    dt->add_option("-o,--output", dot_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*g) return run_gen(gen, seed);
        if (*d) return run_dim(dim);
        if (*dc) return run_decompose(dec, jobs);
        if (*ck) return run_check(check_poset, check_coloring);
        if (*ly) return run_layers(layers_poset, layers_source, layers_out);
        if (*ap) return run_apex(apex_poset, apex, apex_out);
        if (*dt) return run_dot(dot_in, dot_out);
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const ConnectivityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerificationFailure;
    }
    return 0;
}
