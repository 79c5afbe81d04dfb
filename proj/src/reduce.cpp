#include "gm4/assembly.hpp"

#include <set>

namespace gm4 {

namespace {

// Old boundary (block, label) becomes new boundary (block, label) via kappa.
struct Rebase {
    Endpoint from, to;
    BoundaryIso kappa;
};

BoundaryIso kappa_map(const Mat2& old_phi, const Mat2& fiber, const Vec2& shift, int t_sign) {
    return fiber_map(TorusBundle{old_phi}, fiber, Pi1Element(shift, Int(t_sign)));
}

void apply_rebases(GraphStructure& gs, const std::vector<Rebase>& rb) {
    for (auto& e : gs.edges) {
        for (const auto& r : rb) {
            if (e.source == r.from) {
                e.iso = iso_compose(e.iso, iso_inverse(r.kappa));
                e.source = r.to;
                break;
            }
        }
        for (const auto& r : rb) {
            if (e.target == r.from) {
                e.iso = iso_compose(r.kappa, e.iso);
                e.target = r.to;
                break;
            }
        }
    }
}

void check_boundaries(const Block& b, const std::vector<Rebase>& rb) {
    // every kappa must land on the new boundary monodromy
    auto ms = boundary_matrices(b.rep);
    for (const auto& r : rb) {
        if (r.to.block != b.label) continue;
        int k = b.boundary_index(r.to.boundary);
        if (k < 0 || r.kappa.target.phi != ms[k])
            throw Error("internal: boundary re-basing inconsistent at " + r.to.to_string());
    }
}

int first_boundary_gen(const Surface& s) { return 2 * s.handles + s.crosscaps; }

std::string fresh_label(const std::set<std::string>& used, const std::string& want) {
    if (!used.count(want)) return want;
    for (int i = 2;; ++i) {
        std::string c = want + "_" + std::to_string(i);
        if (!used.count(c)) return c;
    }
}

// images for the given surface from handle, crosscap and explicit boundary lists
std::vector<Mat2> assemble(const std::vector<Mat2>& handles, const std::vector<Mat2>& cross, const std::vector<Mat2>& bnd) {
    std::vector<Mat2> v = handles;
    v.insert(v.end(), cross.begin(), cross.end());
    v.insert(v.end(), bnd.begin(), bnd.end());
    return v;
}

std::vector<Mat2> handle_images(const Block& b) {
    return {b.rep.images.begin(), b.rep.images.begin() + 2 * b.surface().handles};
}

std::vector<Mat2> crosscap_images(const Block& b) {
    return {b.rep.images.begin() + 2 * b.surface().handles, b.rep.images.begin() + first_boundary_gen(b.surface())};
}

Mat2 product(const std::vector<Mat2>& ms, size_t from, size_t to) {
    Mat2 p;
    for (size_t i = from; i < to; ++i) p = p * ms[i];
    return p;
}

} // namespace

void fiber_change(GraphStructure& gs, const std::string& label, const Mat2& q) {
    Block& b = gs.block(label);
    if (!q.unimodular()) throw Error("fiber_change: matrix must be invertible over Z");
    auto old = boundary_matrices(b.rep);
    std::vector<Rebase> rb;
    for (auto& m : b.rep.images) m = conj(q, m);
    for (size_t k = 0; k < old.size(); ++k)
        rb.push_back({{label, b.boundary_labels[k]}, {label, b.boundary_labels[k]}, kappa_map(old[k], q, {Int(0), Int(0)}, 1)});
    if (b.orientation != 0) b.orientation *= sign(q.det());
    check_boundaries(b, rb);
    apply_rebases(gs, rb);
}

void move_boundary_last(GraphStructure& gs, const std::string& label, const std::string& boundary) {
    Block& b = gs.block(label);
    const int nb = b.surface().boundaries;
    const int k = b.boundary_index(boundary);
    if (k < 0) throw Error("unknown boundary label '" + label + "." + boundary + "'");
    if (k == nb - 1) return;
    auto old = boundary_matrices(b.rep);
    Mat2 w = product(old, k + 1, nb);
    std::vector<Mat2> explicit_bnd;
    std::vector<std::string> labels;
    for (int j = 0; j < nb; ++j)
        if (j != k) {
            explicit_bnd.push_back(old[j]);
            labels.push_back(b.boundary_labels[j]);
        }
    labels.push_back(b.boundary_labels[k]);
    b.rep.images = assemble(handle_images(b), crosscap_images(b), explicit_bnd);
    b.boundary_labels = labels;
    std::vector<Rebase> rb;
    Endpoint ep{label, boundary};
    rb.push_back({ep, ep, kappa_map(old[k], inverse(w), {Int(0), Int(0)}, 1)});
    check_boundaries(b, rb);
    apply_rebases(gs, rb);
}

void mirror_base(GraphStructure& gs, const std::string& label) {
    Block& b = gs.block(label);
    const Surface s = b.surface();
    auto old = boundary_matrices(b.rep);
    auto hs = handle_images(b);
    auto xs = crosscap_images(b);
    std::vector<Mat2> nh;
    for (int i = s.handles - 1; i >= 0; --i) {
        nh.push_back(hs[2 * i + 1]);
        nh.push_back(hs[2 * i]);
    }
    Mat2 hp;
    for (int i = 0; i < s.handles; ++i) hp = hp * commutator(nh[2 * i], nh[2 * i + 1]);
    std::vector<Mat2> nx;
    for (int j = s.crosscaps - 1; j >= 0; --j) nx.push_back(inverse(hp) * inverse(xs[j]) * hp);
    std::vector<Mat2> nbnd;
    std::vector<std::string> labels;
    for (int k = s.boundaries - 1; k >= 0; --k) {
        if (k > 0) nbnd.push_back(inverse(old[k]));
        labels.push_back(b.boundary_labels[k]);
    }
    b.rep.images = assemble(nh, nx, nbnd);
    b.boundary_labels = labels;
    if (b.orientation != 0) b.orientation = -b.orientation;
    std::vector<Rebase> rb;
    for (int k = 0; k < s.boundaries; ++k) {
        Endpoint ep{label, labels[s.boundaries - 1 - k]};
        rb.push_back({ep, ep, kappa_map(old[k], Mat2::identity(), {Int(0), Int(0)}, -1)});
    }
    check_boundaries(b, rb);
    apply_rebases(gs, rb);
}

namespace {

void merge_distinct(GraphStructure& gs, size_t ei) {
    // precondition: glued boundaries are last in both blocks, glueing is t -> x^v t^-1 with fiber matrix I
    Edge e = gs.edges[ei];
    const Block b1 = gs.block(e.source.block);
    const Block b2 = gs.block(e.target.block);
    const Surface s1 = b1.surface(), s2 = b2.surface();
    const int nb = s1.boundaries + s2.boundaries - 2;
    if (nb < 1)
        throw ReductionError("not a graph-manifold presentation with boundary blocks: contracting " + e.source.to_string() +
                             " -> " + e.target.to_string() + " leaves a T^2-bundle over a closed surface");
    const Vec2 v = e.iso.t.fiber();
    auto d1 = boundary_matrices(b1.rep), d2 = boundary_matrices(b2.rep);
    const Mat2 h1 = handle_product(b1.rep), x1 = crosscap_product(b1.rep);
    const Mat2 h2 = handle_product(b2.rep), x2 = crosscap_product(b2.rep);
    const Mat2 u = h2 * x2, ui = inverse(u);

    std::vector<Mat2> hs = handle_images(b1), h2s = handle_images(b2);
    hs.insert(hs.end(), h2s.begin(), h2s.end());
    std::vector<Mat2> xs;
    for (const auto& x : crosscap_images(b1)) xs.push_back(inverse(h2) * x * h2);
    for (const auto& x : crosscap_images(b2)) xs.push_back(x);

    std::set<std::string> used_blocks;
    for (const auto& b : gs.blocks)
        if (b.label != b1.label && b.label != b2.label) used_blocks.insert(b.label);
    const std::string nl = fresh_label(used_blocks, b1.label + "_" + b2.label);

    // boundary list: b1's 0..n1-2 conjugated by u, then b2's 0..n2-2
    std::vector<Mat2> bnd;
    std::vector<std::string> labels;
    std::set<std::string> used;
    std::vector<Rebase> rb;
    const int n1 = s1.boundaries, n2 = s2.boundaries;
    for (int k = 0; k + 1 < n1; ++k) {
        bnd.push_back(ui * d1[k] * u);
        std::string l = fresh_label(used, b1.boundary_labels[k]);
        used.insert(l);
        labels.push_back(l);
        Vec2 shift{Int(0), Int(0)};
        if (n2 == 1 && k == n1 - 2) {
            // becomes the implicit last boundary; lift differs by x^z, z = -R v
            Mat2 r = inverse(h1 * x1 * product(d1, 0, n1 - 2)) * d2[n2 - 1];
            shift = ui * (-(r * v));
        }
        rb.push_back({{b1.label, b1.boundary_labels[k]}, {nl, l}, kappa_map(d1[k], ui, shift, 1)});
    }
    for (int k = 0; k + 1 < n2; ++k) {
        bnd.push_back(d2[k]);
        std::string l = fresh_label(used, b2.boundary_labels[k]);
        used.insert(l);
        labels.push_back(l);
        Vec2 shift{Int(0), Int(0)};
        if (k == n2 - 2) {
            Mat2 q = inverse(h2 * x2 * product(d2, 0, n2 - 2));
            shift = -(q * v);
        }
        rb.push_back({{b2.label, b2.boundary_labels[k]}, {nl, l}, kappa_map(d2[k], Mat2::identity(), shift, 1)});
    }
    bnd.pop_back(); // last boundary is implicit

    Block m;
    m.label = nl;
    m.rep.surface = Surface{s1.handles + s2.handles, s1.crosscaps + s2.crosscaps, nb};
    m.rep.images = assemble(hs, xs, bnd);
    m.boundary_labels = labels;
    m.orientation = b1.orientation;

    gs.edges.erase(gs.edges.begin() + static_cast<long>(ei));
    int i1 = gs.block_index(b1.label), i2 = gs.block_index(b2.label);
    gs.blocks[i1] = m;
    gs.blocks.erase(gs.blocks.begin() + i2);
    check_boundaries(m, rb);
    apply_rebases(gs, rb);
}

void self_glue(GraphStructure& gs, size_t ei) {
    // precondition: source boundary at position n-2, target at n-1
    Edge e = gs.edges[ei];
    const Block b = gs.block(e.source.block);
    const Surface s = b.surface();
    const int n = s.boundaries;
    if (n < 3)
        throw ReductionError("not a graph-manifold presentation with boundary blocks: self-glueing " + e.source.to_string() +
                             " -> " + e.target.to_string() + " closes the base");
    const Mat2 c = fiber_matrix(e.iso);
    const Vec2 v = e.iso.t.fiber();
    const int kt = sign(e.iso.t.k);
    auto d = boundary_matrices(b.rep);
    const Mat2 ui = d[n - 2];
    const Mat2 h = handle_product(b.rep), x = crosscap_product(b.rep);
    const Mat2 q = inverse(h * x * product(d, 0, n - 3));

    std::vector<Mat2> hs = handle_images(b), xs = crosscap_images(b);
    Mat2 conj_by; // new boundary elements are conj_by^-1 d conj_by
    Vec2 shift;
    Surface ns = s;
    ns.boundaries = n - 2;
    if (kt < 0) {
        // new handle (u, s) with rho(s) = C
        const Mat2 k = commutator(ui, c);
        hs.push_back(ui);
        hs.push_back(c);
        for (auto& m : xs) m = inverse(k) * m * k;
        conj_by = k;
        shift = -(q * v);
        ns.handles += 1;
    } else {
        // two crosscaps y = u s, z = s^-1
        const Mat2 y = ui * c, z = inverse(c);
        const Mat2 yy = y * y * z * z;
        xs.push_back(y);
        xs.push_back(z);
        conj_by = yy;
        shift = q * inverse(yy) * (ui * v);
        ns.crosscaps += 2;
    }
    const Mat2 ci = inverse(conj_by);
    std::vector<Mat2> bnd;
    std::vector<std::string> labels;
    std::vector<Rebase> rb;
    for (int k = 0; k + 2 < n; ++k) {
        bnd.push_back(ci * d[k] * conj_by);
        labels.push_back(b.boundary_labels[k]);
        Vec2 sh{Int(0), Int(0)};
        if (k == n - 3) sh = ci * shift;
        rb.push_back({{b.label, b.boundary_labels[k]}, {b.label, b.boundary_labels[k]}, kappa_map(d[k], ci, sh, 1)});
    }
    bnd.pop_back();
    Block m = b;
    m.rep.surface = ns;
    m.rep.images = assemble(hs, xs, bnd);
    m.boundary_labels = labels;
    gs.edges.erase(gs.edges.begin() + static_cast<long>(ei));
    gs.block(b.label) = m;
    check_boundaries(m, rb);
    apply_rebases(gs, rb);
}

size_t find_edge(const GraphStructure& gs, const Endpoint& s, const Endpoint& t) {
    for (size_t i = 0; i < gs.edges.size(); ++i)
        if (gs.edges[i].source == s && gs.edges[i].target == t) return i;
    throw Error("internal: edge lost during reduction");
}

} // namespace

void contract_edge(GraphStructure& gs, size_t ei) {
    if (ei >= gs.edges.size()) throw Error("contract_edge: edge index out of range");
    if (!is_fiber_preserving(gs.edges[ei].iso)) throw Error("contract_edge: glueing is not fiber-preserving");
    Endpoint s = gs.edges[ei].source, t = gs.edges[ei].target;
    if (s.block == t.block) {
        move_boundary_last(gs, s.block, s.boundary);
        move_boundary_last(gs, t.block, t.boundary);
        self_glue(gs, find_edge(gs, s, t));
        return;
    }
    // mirroring reverses the boundary order, so it comes before the moves
    if (sign(gs.edges[ei].iso.t.k) > 0) mirror_base(gs, t.block);
    move_boundary_last(gs, s.block, s.boundary);
    move_boundary_last(gs, t.block, t.boundary);
    size_t i = find_edge(gs, s, t);
    fiber_change(gs, t.block, inverse(fiber_matrix(gs.edges[i].iso)));
    i = find_edge(gs, s, t);
    if (gs.block(s.block).orientation != gs.block(t.block).orientation)
        throw Error("internal: orientations disagree across a contracted edge");
    merge_distinct(gs, i);
}

GraphStructure reduce(const GraphStructure& input) {
    GraphStructure gs = input;
    auto eps = solve_orientations(gs);
    if (!eps) throw Error("reduce: structure admits no consistent orientation");
    for (size_t i = 0; i < gs.blocks.size(); ++i) gs.blocks[i].orientation = (*eps)[i];
    for (;;) {
        auto r = is_reduced(gs);
        if (r.reduced) return gs;
        contract_edge(gs, r.offending.front());
    }
}

} // namespace gm4
