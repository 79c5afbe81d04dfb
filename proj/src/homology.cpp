#include "gm4/assembly.hpp"

#include <algorithm>

namespace gm4 {

long euler_characteristic(const GraphStructure& gs) {
    // chi(T^2 x base) = chi(T^2) chi(base); decomposing manifolds are closed 3-manifolds
    const long chi_torus = 0, chi_circle = 0;
    long chi = 0;
    for (const auto& b : gs.blocks) chi += chi_torus * b.surface().euler();
    const long chi_decomposing = chi_torus * chi_circle;
    for (size_t i = 0; i < gs.edges.size(); ++i) chi -= chi_decomposing;
    if (chi != 0) throw Error("internal: Euler characteristic " + std::to_string(chi) + " != 0");
    return chi;
}

namespace {

struct Layout {
    std::vector<size_t> offset; // per block: x at offset, y at offset+1, free generators after
    size_t total = 0;
};

Layout layout(const GraphStructure& gs) {
    Layout l;
    for (const auto& b : gs.blocks) {
        l.offset.push_back(l.total);
        l.total += 2 + static_cast<size_t>(b.surface().rank());
    }
    return l;
}

// abelianised boundary word c_k (k < n-1) or (H X c_1...c_{n-1})^-1
void add_boundary_word(std::vector<Int>& row, size_t off, const Surface& s, int k, const Int& coef) {
    const size_t first = off + 2 + static_cast<size_t>(2 * s.handles);
    const size_t bfirst = first + static_cast<size_t>(s.crosscaps);
    if (k + 1 < s.boundaries) {
        row[bfirst + k] += coef;
        return;
    }
    for (int j = 0; j < s.crosscaps; ++j) row[first + j] -= 2 * coef;
    for (int j = 0; j + 1 < s.boundaries; ++j) row[bfirst + j] -= coef;
}

} // namespace

AbelianGroup first_homology(const GraphStructure& gs) {
    Layout lay = layout(gs);
    IntMatrix rel(0, lay.total);
    rel.cols = lay.total;
    for (size_t bi = 0; bi < gs.blocks.size(); ++bi) {
        const Block& b = gs.blocks[bi];
        const size_t off = lay.offset[bi];
        for (const auto& m : b.rep.images) {
            // g w g^-1 = rho(g) w  =>  (rho(g) - I) w = 0
            std::vector<Int> r1(lay.total), r2(lay.total);
            r1[off] = m.a - 1;
            r1[off + 1] = m.c;
            r2[off] = m.b;
            r2[off + 1] = m.d - 1;
            rel.append_row(r1);
            rel.append_row(r2);
        }
    }
    for (const auto& e : gs.edges) {
        const int si = gs.block_index(e.source.block), ti = gs.block_index(e.target.block);
        const Block& bs = gs.blocks[si];
        const Block& bt = gs.blocks[ti];
        const int ks = bs.boundary_index(e.source.boundary), kt = bt.boundary_index(e.target.boundary);
        const size_t os = lay.offset[si], ot = lay.offset[ti];
        const Pi1Element* img[3] = {&e.iso.x, &e.iso.y, &e.iso.t};
        for (int g = 0; g < 3; ++g) {
            std::vector<Int> r(lay.total);
            if (g == 0) r[os] += 1;
            if (g == 1) r[os + 1] += 1;
            if (g == 2) add_boundary_word(r, os, bs.surface(), ks, Int(1));
            r[ot] -= img[g]->a;
            r[ot + 1] -= img[g]->b;
            add_boundary_word(r, ot, bt.surface(), kt, -img[g]->k);
            rel.append_row(r);
        }
    }
    // stable letters for the edges outside a spanning tree are free generators
    const long stable = static_cast<long>(gs.edges.size()) - static_cast<long>(gs.blocks.size()) + 1;
    AbelianGroup g = presentation_group(rel, lay.total);
    g.rank += static_cast<size_t>(std::max(0L, stable));
    return g;
}

namespace {

const Mat2& flip() {
    static const Mat2 d = Mat2::diag(1, -1);
    return d;
}

// class of an oriented torus bundle: psi ~ phi or D phi^-1 D give the same oriented manifold
std::string oriented_class(const Mat2& phi, int eps) {
    Mat2 p = eps < 0 ? flip() * phi * flip() : phi;
    std::string a = classify(p).to_string();
    std::string b = classify(flip() * inverse(p) * flip()).to_string();
    return std::min(a, b);
}

bool unipotent_key(const std::string& key) {
    return key == "Central(+1)" || key.rfind("Parabolic(+1,", 0) == 0;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
}

} // namespace

InvariantReport invariant_report(const GraphStructure& gs) {
    InvariantReport r;
    auto eps = solve_orientations(gs);
    if (!eps) throw Error("structure admits no consistent orientation");
    r.block_count = gs.blocks.size();
    bool orientable_bases = true;
    for (size_t i = 0; i < gs.blocks.size(); ++i) {
        const Block& b = gs.blocks[i];
        std::vector<std::string> cls;
        for (const auto& m : boundary_matrices(b.rep)) cls.push_back(oriented_class(m, (*eps)[i]));
        std::sort(cls.begin(), cls.end());
        r.blocks.push_back(b.surface().type_name() + ": [" + join(cls) + "]");
        orientable_bases = orientable_bases && b.surface().orientable();
    }
    std::sort(r.blocks.begin(), r.blocks.end());
    auto red = is_reduced(gs);
    r.reduced = red.reduced;
    for (const auto& e : gs.edges) {
        std::string a = oriented_class(e.iso.source.phi, (*eps)[gs.block_index(e.source.block)]);
        std::string b = oriented_class(e.iso.target.phi, (*eps)[gs.block_index(e.target.block)]);
        if (b < a) std::swap(a, b);
        r.decomposing.push_back("{" + a + ", " + b + "}");
        if (r.reduced && (!unipotent_key(a) || !unipotent_key(b)))
            r.findings.push_back("decomposing class " + r.decomposing.back() + " of a reduced structure is not conjugate to (1 n;0 1)");
    }
    std::sort(r.decomposing.begin(), r.decomposing.end());
    if (orientable_bases) {
        r.sigma = manifold_signature(gs);
        if (r.reduced && sign(*r.sigma) != 0) r.findings.push_back("reduced structure with orientable bases has sigma " + to_string(*r.sigma));
    } else {
        r.sigma_note = "unsupported (non-orientable base)";
    }
    r.euler = euler_characteristic(gs);
    r.h1 = first_homology(gs);
    return r;
}

std::string InvariantReport::to_text() const {
    std::string s;
    s += "blocks: " + std::to_string(block_count) + "\n";
    for (const auto& b : blocks) s += "block: " + b + "\n";
    for (const auto& d : decomposing) s += "decomposing: " + d + "\n";
    s += "sigma: " + (sigma ? to_string(*sigma) : sigma_note) + "\n";
    s += "euler: " + std::to_string(euler) + "\n";
    s += "h1: " + h1.to_string() + "\n";
    s += std::string("reduced: ") + (reduced ? "yes" : "no") + "\n";
    for (const auto& f : findings) s += "finding: " + f + "\n";
    return s;
}

std::string InvariantReport::first_difference(const InvariantReport& o) const {
    if (block_count != o.block_count) return "block count";
    if (blocks != o.blocks) return "block types";
    if (decomposing != o.decomposing) return "decomposing classes";
    if (sigma != o.sigma) return "sigma";
    if (euler != o.euler) return "euler";
    if (h1 != o.h1) return "h1";
    return {};
}

} // namespace gm4
