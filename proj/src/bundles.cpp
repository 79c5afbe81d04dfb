#include "gm4/bundles.hpp"
#include "gm4/gl2z.hpp"

#include <set>

namespace gm4 {

std::vector<std::string> Surface::generator_names() const {
    std::vector<std::string> names;
    for (int i = 1; i <= handles; ++i) {
        names.push_back("a" + std::to_string(i));
        names.push_back("b" + std::to_string(i));
    }
    for (int i = 1; i <= crosscaps; ++i) names.push_back("x" + std::to_string(i));
    for (int i = 1; i < boundaries; ++i) names.push_back("c" + std::to_string(i));
    return names;
}

std::string Surface::type_name() const {
    std::string s = orientable() ? "orientable genus " : "nonorientable genus ";
    return s + std::to_string(genus()) + " boundary " + std::to_string(boundaries);
}

int Block::boundary_index(const std::string& l) const {
    for (size_t i = 0; i < boundary_labels.size(); ++i)
        if (boundary_labels[i] == l) return static_cast<int>(i);
    return -1;
}

std::string to_string(const Diagnostics& d) {
    std::string s;
    for (const auto& v : d) s += v.code + ": " + v.message + "\n";
    return s;
}

Diagnostics validate_block(const Block& blk) {
    Diagnostics out;
    const Surface& s = blk.surface();
    auto add = [&](std::string code, std::string msg) {
        out.push_back({std::move(code), "block " + blk.label + ": " + std::move(msg)});
    };
    if (s.handles < 0 || s.crosscaps < 0) {
        add("bad-surface", "negative handle or crosscap count");
        return out;
    }
    if (s.boundaries < 1) {
        add("no-boundary", "base must have at least one boundary component");
        return out;
    }
    if (s.genus() == 0 && s.orientable() && s.boundaries <= 2)
        add("excluded-surface", std::string("excluded surface: ") + (s.boundaries == 1 ? "disc" : "annulus"));
    if (!s.orientable() && s.genus() == 1 && s.boundaries == 1) add("excluded-surface", "excluded surface: Moebius band");
    if (s.euler() >= 0) add("euler", "χ = " + std::to_string(s.euler()) + ", Euler characteristic must be negative");

    auto names = s.generator_names();
    if (blk.rep.images.size() != names.size()) {
        add("arity", "expected " + std::to_string(names.size()) + " generator images, got " +
                         std::to_string(blk.rep.images.size()));
    } else {
        const int first_crosscap = 2 * s.handles;
        for (size_t i = 0; i < names.size(); ++i) {
            const Mat2& m = blk.rep.images[i];
            Int d = m.det();
            if (d != 1 && d != -1) {
                add("not-unimodular", "generator " + names[i] + ": determinant " + d.get_str() + ", not unimodular");
                continue;
            }
            bool reversing = static_cast<int>(i) >= first_crosscap && static_cast<int>(i) < first_crosscap + s.crosscaps;
            if ((reversing && d != -1) || (!reversing && d != 1))
                add("non-orientable-total-space",
                    "generator " + names[i] + ": determinant " + d.get_str() + " makes the total space non-orientable");
        }
    }
    if (blk.boundary_labels.size() != static_cast<size_t>(s.boundaries)) {
        add("labels", "expected " + std::to_string(s.boundaries) + " boundary labels, got " +
                          std::to_string(blk.boundary_labels.size()));
    } else {
        std::set<std::string> seen;
        for (const auto& l : blk.boundary_labels)
            if (l.empty() || !seen.insert(l).second) add("labels", "boundary label '" + l + "' empty or repeated");
    }
    return out;
}

Mat2 handle_product(const MonodromyRep& rep) {
    Mat2 h;
    for (int i = 0; i < rep.surface.handles; ++i) h = h * commutator(rep.images[2 * i], rep.images[2 * i + 1]);
    return h;
}

Mat2 crosscap_product(const MonodromyRep& rep) {
    Mat2 x;
    for (int i = 0; i < rep.surface.crosscaps; ++i) {
        const Mat2& m = rep.images[2 * rep.surface.handles + i];
        x = x * m * m;
    }
    return x;
}

std::vector<Mat2> boundary_matrices(const MonodromyRep& rep) {
    const Surface& s = rep.surface;
    const int off = 2 * s.handles + s.crosscaps;
    std::vector<Mat2> out;
    Mat2 prod = handle_product(rep) * crosscap_product(rep);
    for (int k = 0; k + 1 < s.boundaries; ++k) {
        out.push_back(rep.images[off + k]);
        prod = prod * rep.images[off + k];
    }
    out.push_back(inverse(prod));
    return out;
}

std::vector<std::pair<std::string, Mat2>> boundary_monodromies(const Block& b) {
    auto ms = boundary_matrices(b.rep);
    std::vector<std::pair<std::string, Mat2>> out;
    for (size_t i = 0; i < ms.size(); ++i) out.emplace_back(b.boundary_labels.at(i), ms[i]);
    return out;
}

std::string to_string(const Pi1Element& e) {
    return "(" + e.a.get_str() + "," + e.b.get_str() + "," + e.k.get_str() + ")";
}

Pi1Element pi1_mul(const TorusBundle& m, const Pi1Element& e1, const Pi1Element& e2) {
    Vec2 w = power(m.phi, e1.k) * e2.fiber();
    return {e1.fiber() + w, e1.k + e2.k};
}

Pi1Element pi1_inv(const TorusBundle& m, const Pi1Element& e) {
    Vec2 w = power(m.phi, -e.k) * e.fiber();
    return {-w, -e.k};
}

Pi1Element pi1_pow(const TorusBundle& m, const Pi1Element& e, const Int& n) {
    Pi1Element base = sign(n) < 0 ? pi1_inv(m, e) : e;
    Int k = abs(n);
    Pi1Element acc(0L, 0L, 0L);
    while (sign(k) > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = pi1_mul(m, acc, base);
        k >>= 1;
        if (sign(k) > 0) base = pi1_mul(m, base, base);
    }
    return acc;
}

BoundaryIso identity_iso(const TorusBundle& m) {
    return {m, m, Pi1Element(1L, 0L, 0L), Pi1Element(0L, 1L, 0L), Pi1Element(0L, 0L, 1L)};
}

BoundaryIso fiber_map(const TorusBundle& source, const Mat2& c, const Pi1Element& t_image) {
    // t w t^-1 = phi w  maps to  T (C w) T^-1 = C phi w, so the target monodromy is C phi^k C^-1 with k = +-1
    if (sign(t_image.k) == 0 || abs(t_image.k) != 1) throw Error("fiber_map: t must map to t^+-1 times a fiber element");
    Mat2 tgt = c * source.phi * inverse(c);
    if (sign(t_image.k) < 0) tgt = inverse(tgt);
    return {source, TorusBundle{tgt}, Pi1Element(Vec2{c.a, c.c}, Int(0)), Pi1Element(Vec2{c.b, c.d}, Int(0)), t_image};
}

bool is_fiber_preserving(const BoundaryIso& iso) { return sign(iso.x.k) == 0 && sign(iso.y.k) == 0; }

Mat2 fiber_matrix(const BoundaryIso& iso) { return Mat2(iso.x.a, iso.y.a, iso.x.b, iso.y.b); }

Pi1Element iso_apply(const BoundaryIso& iso, const Pi1Element& e) {
    const TorusBundle& g = iso.target;
    Pi1Element r = pi1_pow(g, iso.x, e.a);
    r = pi1_mul(g, r, pi1_pow(g, iso.y, e.b));
    return pi1_mul(g, r, pi1_pow(g, iso.t, e.k));
}

namespace {

bool relations_hold(const BoundaryIso& iso, std::string* why) {
    const TorusBundle& g = iso.target;
    const Mat2& p = iso.source.phi;
    auto mul = [&](const Pi1Element& u, const Pi1Element& v) { return pi1_mul(g, u, v); };
    auto inv = [&](const Pi1Element& u) { return pi1_inv(g, u); };
    const Pi1Element& X = iso.x;
    const Pi1Element& Y = iso.y;
    const Pi1Element& T = iso.t;
    if (mul(X, Y) != mul(Y, X)) {
        if (why) *why = "relation [X,Y] = 1 fails on images";
        return false;
    }
    Pi1Element lhs = mul(mul(T, X), inv(T));
    Pi1Element rhs = mul(pi1_pow(g, X, p.a), pi1_pow(g, Y, p.c));
    if (lhs != rhs) {
        if (why) *why = "relation T X T^-1 = X^" + p.a.get_str() + " Y^" + p.c.get_str() + " fails on images";
        return false;
    }
    lhs = mul(mul(T, Y), inv(T));
    rhs = mul(pi1_pow(g, X, p.b), pi1_pow(g, Y, p.d));
    if (lhs != rhs) {
        if (why) *why = "relation T Y T^-1 = X^" + p.b.get_str() + " Y^" + p.d.get_str() + " fails on images";
        return false;
    }
    return true;
}

// data describing the target as a central extension Z -> G -> Z^2 (unipotent monodromy != I)
struct NilFrame {
    Vec2 v, u; // v fixed primitive, det[v u] = 1
};

std::optional<NilFrame> nil_frame(const Mat2& phi) {
    if (phi.det() != 1 || phi.is_identity()) return std::nullopt;
    FixedVector fv = eigenvector_eigenvalue_one(phi);
    if (fv.kind != FixedVector::Line) return std::nullopt;
    Int s, t;
    ext_gcd(fv.v.x, fv.v.y, s, t);
    return NilFrame{fv.v, Vec2{-t, s}};
}

Vec2 quotient_coords(const NilFrame& f, const Pi1Element& e) {
    return {f.v.x * e.b - f.v.y * e.a, e.k}; // (det[v, w], k)
}

struct Analysis {
    enum Kind { FiberPreserving, Abelian, Nil, NotBijective, Unsupported } kind = NotBijective;
    std::string why;
    // Abelian: 3x3 image matrix (columns images of x, y, t)
    IntMatrix f3;
    // Nil
    NilFrame src, tgt;
    int centre_sign = 0;
    Mat2 quotient;
};

Int det3(const IntMatrix& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Analysis analyse(const BoundaryIso& iso) {
    Analysis an;
    const Mat2& p1 = iso.source.phi;
    const Mat2& p2 = iso.target.phi;
    if (is_fiber_preserving(iso)) {
        Mat2 c = fiber_matrix(iso);
        if (!c.unimodular()) {
            an.why = "fiber matrix has determinant " + c.det().get_str();
            return an;
        }
        if (abs(iso.t.k) != 1) {
            an.why = "t maps to base degree " + iso.t.k.get_str();
            return an;
        }
        an.kind = Analysis::FiberPreserving;
        return an;
    }
    if (p2.det() != 1) {
        an.kind = Analysis::Unsupported;
        an.why = "non-fiber-preserving map into a determinant -1 torus bundle";
        return an;
    }
    if (eigenvector_eigenvalue_one(p2).kind == FixedVector::None) {
        an.why = "target monodromy has no eigenvalue 1, so its fiber subgroup is characteristic";
        return an;
    }
    if (p2.is_identity()) {
        IntMatrix f(3, 3);
        const Pi1Element* im[3] = {&iso.x, &iso.y, &iso.t};
        for (int j = 0; j < 3; ++j) {
            f(0, j) = im[j]->a;
            f(1, j) = im[j]->b;
            f(2, j) = im[j]->k;
        }
        Int d = det3(f);
        if (abs(d) != 1) {
            an.why = "image matrix has determinant " + d.get_str();
            return an;
        }
        an.kind = Analysis::Abelian;
        an.f3 = f;
        return an;
    }
    auto tf = nil_frame(p2);
    auto sf = nil_frame(p1);
    if (!sf) {
        an.why = "source and target groups are not isomorphic (target nilpotent, source not)";
        return an;
    }
    an.src = *sf;
    an.tgt = *tf;
    Pi1Element z = iso_apply(iso, Pi1Element(an.src.v, Int(0)));
    if (sign(z.k) != 0 || (z.fiber() != an.tgt.v && z.fiber() != -an.tgt.v)) {
        an.why = "centre is not mapped onto the centre";
        return an;
    }
    an.centre_sign = z.fiber() == an.tgt.v ? 1 : -1;
    Vec2 qu = quotient_coords(an.tgt, iso_apply(iso, Pi1Element(an.src.u, Int(0))));
    Vec2 qt = quotient_coords(an.tgt, iso.t);
    an.quotient = Mat2(qu.x, qt.x, qu.y, qt.y);
    if (!an.quotient.unimodular()) {
        an.why = "induced map on the quotient by the centre has determinant " + an.quotient.det().get_str();
        return an;
    }
    an.kind = Analysis::Nil;
    return an;
}

std::optional<Pi1Element> preimage_of(const BoundaryIso& iso, const Analysis& an, const Pi1Element& g) {
    const TorusBundle& src = iso.source;
    switch (an.kind) {
    case Analysis::FiberPreserving: {
        Int m = g.k * iso.t.k; // t.k = +-1
        Pi1Element tm = pi1_pow(iso.target, iso.t, m);
        Vec2 w = inverse(fiber_matrix(iso)) * (g.fiber() - tm.fiber());
        return Pi1Element(w, m);
    }
    case Analysis::Abelian: {
        // f3 * p = (a,b,k); adjugate inverse since det = +-1
        const IntMatrix& f = an.f3;
        Int d = det3(f);
        Int r[3] = {g.a, g.b, g.k};
        Int p[3];
        for (int i = 0; i < 3; ++i) {
            Int acc = 0;
            for (int j = 0; j < 3; ++j) {
                // cofactor C_{j,i}
                int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                Int cof = f(r0, c0) * f(r1, c1) - f(r0, c1) * f(r1, c0);
                acc += cof * r[j];
            }
            p[i] = acc * d; // d = +-1 so 1/d = d
        }
        return Pi1Element(p[0], p[1], p[2]);
    }
    case Analysis::Nil: {
        Vec2 q = quotient_coords(an.tgt, g);
        Vec2 ab = inverse(an.quotient) * q;
        Pi1Element h(ab.x * an.src.u, ab.y);
        Pi1Element r = pi1_mul(iso.target, pi1_inv(iso.target, iso_apply(iso, h)), g);
        if (sign(r.k) != 0) return std::nullopt;
        // r = e v_target
        Int e = sign(an.tgt.v.x) != 0 ? r.a / an.tgt.v.x : r.b / an.tgt.v.y;
        if (r.fiber() != e * an.tgt.v) return std::nullopt;
        return pi1_mul(src, h, Pi1Element(an.centre_sign * e * an.src.v, Int(0)));
    }
    default:
        return std::nullopt;
    }
}

} // namespace

Diagnostics validate_glueing(const BoundaryIso& iso) {
    Diagnostics out;
    if (!iso.source.phi.unimodular() || !iso.target.phi.unimodular()) {
        out.push_back({"not-unimodular", "torus bundle monodromy must have determinant +-1"});
        return out;
    }
    std::string why;
    if (!relations_hold(iso, &why)) {
        out.push_back({"relation", why});
        return out;
    }
    Analysis an = analyse(iso);
    if (an.kind == Analysis::Unsupported) {
        out.push_back({"unsupported", an.why});
        return out;
    }
    if (an.kind == Analysis::NotBijective) {
        out.push_back({"not-bijective", "induced map is not bijective: " + an.why});
        return out;
    }
    const Pi1Element gens[3] = {{1L, 0L, 0L}, {0L, 1L, 0L}, {0L, 0L, 1L}};
    for (const auto& g : gens) {
        auto p = preimage_of(iso, an, g);
        if (!p || iso_apply(iso, *p) != g) {
            out.push_back({"not-bijective", "no preimage for target generator " + to_string(g)});
            break;
        }
    }
    return out;
}

std::optional<Pi1Element> iso_preimage(const BoundaryIso& iso, const Pi1Element& e) {
    Analysis an = analyse(iso);
    auto p = preimage_of(iso, an, e);
    if (p && iso_apply(iso, *p) != e) return std::nullopt;
    return p;
}

BoundaryIso iso_compose(const BoundaryIso& g, const BoundaryIso& f) {
    if (!(f.target == g.source)) throw Error("iso_compose: target/source mismatch");
    return {f.source, g.target, iso_apply(g, f.x), iso_apply(g, f.y), iso_apply(g, f.t)};
}

BoundaryIso iso_inverse(const BoundaryIso& f) {
    Analysis an = analyse(f);
    BoundaryIso r{f.target, f.source, {}, {}, {}};
    Pi1Element* dst[3] = {&r.x, &r.y, &r.t};
    const Pi1Element gens[3] = {{1L, 0L, 0L}, {0L, 1L, 0L}, {0L, 0L, 1L}};
    for (int i = 0; i < 3; ++i) {
        auto p = preimage_of(f, an, gens[i]);
        if (!p) throw Error("iso_inverse: map is not invertible");
        *dst[i] = *p;
    }
    return r;
}

int iso_degree(const BoundaryIso& iso) {
    Analysis an = analyse(iso);
    switch (an.kind) {
    case Analysis::FiberPreserving:
        return sign(fiber_matrix(iso).det()) * sign(iso.t.k);
    case Analysis::Abelian:
        return sign(det3(an.f3));
    case Analysis::Nil:
        return an.centre_sign * sign(an.quotient.det());
    default:
        throw Error("iso_degree: map is not an isomorphism (" + an.why + ")");
    }
}

std::vector<std::vector<Int>> intertwiner_basis(const std::vector<std::pair<Mat2, Mat2>>& pairs) {
    // alpha = (p q; r s); rows of alpha m1 - m2 alpha = 0 in the unknowns (p,q,r,s)
    IntMatrix sys(4 * pairs.size(), 4);
    for (size_t n = 0; n < pairs.size(); ++n) {
        const Mat2& p1 = pairs[n].first;
        const Mat2& p2 = pairs[n].second;
        const Int P1[2][2] = {{p1.a, p1.b}, {p1.c, p1.d}};
        const Int P2[2][2] = {{p2.a, p2.b}, {p2.c, p2.d}};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                size_t row = 4 * n + 2 * i + j;
                for (int k = 0; k < 2; ++k) {
                    sys(row, 2 * i + k) += P1[k][j];
                    sys(row, 2 * k + j) -= P2[i][k];
                }
            }
    }
    if (pairs.empty()) {
        std::vector<std::vector<Int>> id;
        for (int i = 0; i < 4; ++i) {
            std::vector<Int> e(4);
            e[i] = 1;
            id.push_back(e);
        }
        return id;
    }
    return integer_kernel(sys);
}

std::optional<Mat2> fiber_covering_exists(const Mat2& p1, const Mat2& p2) {
    auto basis = intertwiner_basis({{p1, p2}});
    if (basis.empty()) return std::nullopt;
    const int r = static_cast<int>(basis.size());
    const int bound = 3; // a nonzero quadratic form cannot vanish on {-1,0,1}^r; wider box for smaller |det|
    std::vector<int> coef(r, -bound);
    std::optional<Mat2> best;
    Int best_det, best_sum;
    for (;;) {
        Int v[4];
        for (int i = 0; i < 4; ++i) {
            v[i] = 0;
            for (int j = 0; j < r; ++j) v[i] += coef[j] * basis[j][i];
        }
        Mat2 al(v[0], v[1], v[2], v[3]);
        Int d = abs(al.det());
        int lead = sign(v[0]) != 0 ? sign(v[0]) : sign(v[1]) != 0 ? sign(v[1]) : sign(v[2]) != 0 ? sign(v[2]) : sign(v[3]);
        if (sign(d) != 0 && lead > 0) {
            Int sum = abs(v[0]) + abs(v[1]) + abs(v[2]) + abs(v[3]);
            if (!best || d < best_det || (d == best_det && (sum < best_sum || (sum == best_sum && al < *best)))) {
                best = al;
                best_det = d;
                best_sum = sum;
            }
        }
        int i = 0;
        while (i < r && coef[i] == bound) coef[i++] = -bound;
        if (i == r) break;
        ++coef[i];
    }
    return best;
}

bool fibration_unique(const TorusBundle& m) {
    if (m.phi.det() != 1) throw NotInSL2Z("fibration_unique needs a determinant 1 monodromy");
    return eigenvector_eigenvalue_one(m.phi).kind == FixedVector::None;
}

AbelianGroup torus_bundle_homology(const TorusBundle& m) {
    // generators x, y, t; relations (phi - I) columns
    IntMatrix rel;
    Mat2 k = m.phi - Mat2::identity();
    rel.append_row({k.a, k.c, 0});
    rel.append_row({k.b, k.d, 0});
    return presentation_group(rel, 3);
}

bool square_root_closed(const Surface& s, int boundary_index) {
    if (boundary_index < 0 || boundary_index >= s.boundaries) throw Error("square_root_closed: boundary index out of range");
    return !(!s.orientable() && s.genus() == 1 && s.boundaries == 1);
}

bool orientation_reversing_self_diffeo_exists(const Mat2& phi) {
    if (!phi.unimodular()) throw Error("monodromy must have determinant +-1");
    if (sign(phi.b) != 0 && sign(phi.c) != 0)
        throw OutOfScope("criterion is stated for triangular monodromies only; got " + to_string(phi));
    return sign(phi.b) == 0 && sign(phi.c) == 0;
}

} // namespace gm4
