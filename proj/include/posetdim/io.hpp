#pragma once

// Text formats: posets (`p poset n m` / `r u v`), pair colorings
// (`s colors k` / `i x y c`), PACE `.td` tree decompositions, and DOT.
// Element and bag ids are 1-based on the wire.

#include <cstddef>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poset.hpp"
#include "tree_decomposition.hpp"

namespace posetdim::io {

namespace detail {

struct Line {
    std::size_t number = 0;
    std::string text;
};

/// Non-empty lines, with their 1-based line numbers.
inline std::vector<Line> lines(std::istream& in) {
    std::vector<Line> out;
    std::string s;
    std::size_t no = 0;
    while (std::getline(in, s)) {
        ++no;
        if (!s.empty() && s.back() == '\r') s.pop_back();
        if (s.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back({no, s});
    }
    return out;
}

[[noreturn]] inline void fail(const Line& l, const std::string& what) {
    throw FormatError("line " + std::to_string(l.number) + ": " + what);
}

inline std::size_t read_count(std::istringstream& ss, const Line& l, const char* what) {
    long long v = 0;
    if (!(ss >> v) || v < 0) fail(l, std::string("expected ") + what);
    return static_cast<std::size_t>(v);
}

inline std::size_t read_id(std::istringstream& ss, const Line& l, std::size_t n, const char* what) {
    long long v = 0;
    if (!(ss >> v)) fail(l, std::string("expected ") + what);
    if (v < 1 || static_cast<std::size_t>(v) > n) fail(l, std::string(what) + " out of range");
    return static_cast<std::size_t>(v - 1);
}

inline void expect_end(std::istringstream& ss, const Line& l) {
    std::string rest;
    if (ss >> rest) fail(l, "trailing token '" + rest + "'");
}

}  // namespace detail

// ---- posets ----

inline void write_poset(std::ostream& out, const Poset& p) {
    const auto cover = cover_graph(p);
    for (Element x = 0; x < p.size(); ++x)
        if (x < p.labels().size() && !p.labels()[x].empty())
            out << "c label " << x + 1 << ' ' << p.labels()[x] << '\n';
    out << "p poset " << p.size() << ' ' << cover.edges.size() << '\n';
    for (const auto& [u, v] : cover.edges) out << "r " << u + 1 << ' ' << v + 1 << '\n';
}

inline Poset read_poset(std::istream& in) {
    const auto ls = detail::lines(in);
    std::size_t n = 0, m = 0;
    bool header = false;
    std::vector<Arc> arcs;
    std::vector<std::pair<std::size_t, std::string>> labels;
    for (const auto& l : ls) {
        std::istringstream ss(l.text);
        std::string tag;
        ss >> tag;
        if (tag == "c") {
            std::string word;
            if (ss >> word && word == "label") {
                long long id = 0;
                std::string name;
                if (!(ss >> id >> name)) detail::fail(l, "malformed label comment");
                labels.emplace_back(static_cast<std::size_t>(id), name);
            }
            continue;
        }
        if (tag == "p") {
            if (header) detail::fail(l, "duplicate header");
            std::string kind;
            if (!(ss >> kind) || kind != "poset") detail::fail(l, "expected 'p poset <n> <m>'");
            n = detail::read_count(ss, l, "element count");
            m = detail::read_count(ss, l, "relation count");
            detail::expect_end(ss, l);
            header = true;
            continue;
        }
        if (tag == "r") {
            if (!header) detail::fail(l, "relation before header");
            const auto u = detail::read_id(ss, l, n, "element id");
            const auto v = detail::read_id(ss, l, n, "element id");
            detail::expect_end(ss, l);
            arcs.emplace_back(u, v);
            continue;
        }
        detail::fail(l, "unknown line tag '" + tag + "'");
    }
    if (!header) throw FormatError("missing 'p poset' header");
    if (arcs.size() != m)
        throw FormatError("header announces " + std::to_string(m) + " relations, found " +
                          std::to_string(arcs.size()));
    std::vector<std::string> names;
    if (!labels.empty()) {
        names.assign(n, "");
        for (const auto& [id, name] : labels) {
            if (id < 1 || id > n) throw FormatError("label id out of range");
            names[id - 1] = name;
        }
    }
    try {
        return Poset::from_relations(n, arcs, std::move(names));
    } catch (const CycleError& e) {
        throw FormatError(std::string("relations are cyclic: ") + e.what());
    }
}

// ---- colorings ----

inline void write_coloring(std::ostream& out, const PairColoring& c) {
    out << "s colors " << c.color_count() << '\n';
    for (const auto& [q, col] : c.entries()) out << "i " << q.first + 1 << ' ' << q.second + 1 << ' ' << col << '\n';
}

/// Reads a coloring of pairs over `n` elements; the announced color count
/// must match the distinct colors present.
inline PairColoring read_coloring(std::istream& in, std::size_t n) {
    const auto ls = detail::lines(in);
    PairColoring c(n);
    bool header = false;
    std::size_t announced = 0;
    for (const auto& l : ls) {
        std::istringstream ss(l.text);
        std::string tag;
        ss >> tag;
        if (tag == "c") continue;
        if (tag == "s") {
            std::string kind;
            if (header) detail::fail(l, "duplicate header");
            if (!(ss >> kind) || kind != "colors") detail::fail(l, "expected 's colors <count>'");
            announced = detail::read_count(ss, l, "color count");
            detail::expect_end(ss, l);
            header = true;
            continue;
        }
        if (tag == "i") {
            if (!header) detail::fail(l, "pair before header");
            const auto x = detail::read_id(ss, l, n, "element id");
            const auto y = detail::read_id(ss, l, n, "element id");
            long long col = 0;
            if (!(ss >> col) || col < 0) detail::fail(l, "expected non-negative color");
            detail::expect_end(ss, l);
            if (x == y) detail::fail(l, "pair of identical elements");
            if (c.contains({x, y})) detail::fail(l, "pair listed twice");
            c.set({x, y}, static_cast<Color>(col));
            continue;
        }
        detail::fail(l, "unknown line tag '" + tag + "'");
    }
    if (!header) throw FormatError("missing 's colors' header");
    if (c.color_count() != announced)
        throw FormatError("header announces " + std::to_string(announced) + " colors, found " +
                          std::to_string(c.color_count()));
    return c;
}

// ---- tree decompositions ----

inline void write_td(std::ostream& out, const TreeDecomposition& t) {
    out << "s td " << t.bag_count() << ' ' << (t.bag_count() ? t.width() + 1 : 0) << ' ' << t.vertex_count
        << '\n';
    for (BagId b = 0; b < t.bag_count(); ++b) {
        out << "b " << b + 1;
        for (Element v : t.bags[b]) out << ' ' << v + 1;
        out << '\n';
    }
    for (const auto& [a, b] : t.edges) out << a + 1 << ' ' << b + 1 << '\n';
}

inline TreeDecomposition read_td(std::istream& in) {
    const auto ls = detail::lines(in);
    TreeDecomposition t;
    bool header = false;
    std::size_t bag_total = 0, width1 = 0;
    std::vector<bool> seen;
    for (const auto& l : ls) {
        std::istringstream ss(l.text);
        std::string tag;
        ss >> tag;
        if (tag == "c") continue;
        if (tag == "s") {
            std::string kind;
            if (header) detail::fail(l, "duplicate header");
            if (!(ss >> kind) || kind != "td") detail::fail(l, "expected 's td <bags> <width+1> <vertices>'");
            bag_total = detail::read_count(ss, l, "bag count");
            width1 = detail::read_count(ss, l, "width");
            t.vertex_count = detail::read_count(ss, l, "vertex count");
            detail::expect_end(ss, l);
            t.bags.assign(bag_total, {});
            seen.assign(bag_total, false);
            header = true;
            continue;
        }
        if (!header) detail::fail(l, "content before header");
        if (tag == "b") {
            const auto b = detail::read_id(ss, l, bag_total, "bag id");
            if (seen[b]) detail::fail(l, "bag listed twice");
            seen[b] = true;
            long long v = 0;
            while (ss >> v) {
                if (v < 1 || static_cast<std::size_t>(v) > t.vertex_count) detail::fail(l, "vertex out of range");
                t.bags[b].push_back(static_cast<Element>(v - 1));
            }
            if (!ss.eof()) detail::fail(l, "malformed bag line");
            continue;
        }
        std::istringstream es(l.text);
        const auto a = detail::read_id(es, l, bag_total, "bag id");
        const auto b = detail::read_id(es, l, bag_total, "bag id");
        detail::expect_end(es, l);
        t.edges.emplace_back(a, b);
    }
    if (!header) throw FormatError("missing 's td' header");
    for (std::size_t b = 0; b < bag_total; ++b)
        if (!seen[b]) throw FormatError("bag " + std::to_string(b + 1) + " not listed");
    t.normalize();
    if (bag_total > 0 && t.width() + 1 != width1)
        throw FormatError("header width " + std::to_string(width1) + " does not match largest bag " +
                          std::to_string(t.width() + 1));
    return t;
}

// ---- DOT ----

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + '"';
}

/// Hasse diagram, lower elements at the bottom.
inline void write_dot(std::ostream& out, const Poset& p) {
    out << "digraph poset {\n  rankdir=BT;\n";
    for (Element x = 0; x < p.size(); ++x) out << "  n" << x << " [label=" << dot_quote(p.label(x)) << "];\n";
    const auto g = cover_graph(p);
    for (const auto& [u, v] : g.edges) out << "  n" << u << " -> n" << v << ";\n";
    out << "}\n";
}

inline void write_dot(std::ostream& out, const TreeDecomposition& t) {
    out << "graph decomposition {\n  node [shape=box];\n";
    for (BagId b = 0; b < t.bag_count(); ++b) {
        std::string label = "{";
        for (std::size_t i = 0; i < t.bags[b].size(); ++i) {
            if (i) label += ",";
            label += std::to_string(t.bags[b][i] + 1);
        }
        label += "}";
        out << "  b" << b << " [label=" << dot_quote(label) << "];\n";
    }
    for (const auto& [a, b] : t.edges) out << "  b" << a << " -- b" << b << ";\n";
    out << "}\n";
}

}  // namespace posetdim::io
