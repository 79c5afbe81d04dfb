#pragma once

// Oracles and fixtures shared by the unit and acceptance tests. The oracles deliberately use
// different algorithms from the library (brute-force search, Dedekind sums, fixed-width ints).

#include "gm4/assembly.hpp"
#include "gm4/kernels.hpp"
#include "gm4/manifest.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace support {

using namespace gm4;

inline std::string corpus_dir() { return GM4_CORPUS_DIR; }

struct CorpusEntry {
    std::string name;
    GraphStructure gs;
};

inline std::vector<CorpusEntry> corpus() {
    std::vector<std::string> paths;
    for (const auto& e : std::filesystem::directory_iterator(corpus_dir()))
        if (e.path().extension() == ".gm") paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    std::vector<CorpusEntry> out;
    for (const auto& p : paths) out.push_back({std::filesystem::path(p).stem().string(), load_structure(p)});
    return out;
}

inline GraphStructure corpus_structure(const std::string& name) { return load_structure(corpus_dir() + "/" + name + ".gm"); }

// ---- fixed-width matrices for the brute-force conjugacy oracle ----

using M4 = std::array<int64_t, 4>;

inline M4 mul(const M4& p, const M4& q) {
    return {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2], p[2] * q[1] + p[3] * q[3]};
}
inline int64_t det(const M4& m) { return m[0] * m[3] - m[1] * m[2]; }
inline M4 inv(const M4& m) {
    int64_t d = det(m);
    return {d * m[3], -d * m[1], -d * m[2], d * m[0]};
}
inline M4 to_m4(const Mat2& m) { return {m.a.get_si(), m.b.get_si(), m.c.get_si(), m.d.get_si()}; }

// all distinct matrices given by words of length <= len in R, L, S
inline std::vector<M4> word_ball(int len) {
    const M4 gens[3] = {{1, 1, 0, 1}, {1, 0, 1, 1}, {0, -1, 1, 0}};
    std::set<M4> seen{{1, 0, 0, 1}};
    std::vector<M4> frontier{{1, 0, 0, 1}};
    for (int l = 0; l < len; ++l) {
        std::vector<M4> next;
        for (const auto& w : frontier)
            for (const auto& g : gens) {
                M4 m = mul(w, g);
                if (seen.insert(m).second) next.push_back(m);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

// ---- Rademacher's formula for Psi ----

inline Rational sawtooth(const Rational& x) {
    if (x.get_den() == 1) return 0;
    Int fl = floor_div(x.get_num(), x.get_den());
    return x - Rational(fl) - Rational(1, 2);
}

inline Rational dedekind_sum(const Int& a, const Int& c) {
    Rational s = 0;
    for (Int k = 1; k < c; ++k) {
        Rational u(k, c), v(a * k, c);
        u.canonicalize();
        v.canonicalize();
        s += sawtooth(u) * sawtooth(v);
    }
    return s;
}

inline Rational rademacher_psi(const Mat2& m) {
    Rational phi;
    if (m.c == 0) {
        phi = Rational(m.b, m.d);
        phi.canonicalize();
    } else {
        Int ac = abs(m.c);
        phi = Rational(m.a + m.d, m.c);
        phi.canonicalize();
        phi -= 12 * sign(m.c) * dedekind_sum(m.a, ac);
    }
    return phi - 3 * sign(m.c * (m.a + m.d));
}

// ---- random sampling ----

inline const std::vector<Mat2>& box10() {
    static const std::vector<Mat2> b = sl2z_box(10);
    return b;
}

inline Mat2 random_sl(std::mt19937_64& rng) {
    std::uniform_int_distribution<size_t> pick(0, box10().size() - 1);
    return box10()[pick(rng)];
}

// ---- relabeling ----

// Renames every block and boundary, permutes blocks and edges, reverses every other edge.
inline GraphStructure relabel(const GraphStructure& gs, uint64_t seed) {
    std::mt19937_64 rng(seed);
    GraphStructure out;
    auto bname = [](const std::string& l) { return "n_" + l; };
    auto dname = [](const std::string& l) { return "e_" + l; };
    for (const auto& b : gs.blocks) {
        Block nb = b;
        nb.label = bname(b.label);
        for (auto& l : nb.boundary_labels) l = dname(l);
        out.blocks.push_back(nb);
    }
    std::shuffle(out.blocks.begin(), out.blocks.end(), rng);
    for (size_t i = 0; i < gs.edges.size(); ++i) {
        const Edge& e = gs.edges[i];
        Endpoint s{bname(e.source.block), dname(e.source.boundary)};
        Endpoint t{bname(e.target.block), dname(e.target.boundary)};
        if (i % 2 == 1) out.edges.push_back({t, s, iso_inverse(e.iso)});
        else out.edges.push_back({s, t, e.iso});
    }
    std::shuffle(out.edges.begin(), out.edges.end(), rng);
    return out;
}

} // namespace support
