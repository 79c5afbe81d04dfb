#include "gm4/gl2z.hpp"

#include <algorithm>
#include <vector>

namespace gm4 {

namespace {

std::string signed_str(int s) { return s > 0 ? "+1" : "-1"; }

Mat2 elliptic_rep(int trace, int rotation) {
    Mat2 u(0L, -1L, 1L, 1L); // order 6, fixes exp(2 pi i/3)
    Mat2 m;
    if (trace == 0) m = mat_S();
    else if (trace == 1) m = u;
    else m = u * u;
    return rotation > 0 ? m : inverse(m);
}

// primitive vector spanning the image of a rank-1 matrix
Vec2 image_direction(const Mat2& k) {
    Vec2 v = sign(k.a) != 0 || sign(k.c) != 0 ? Vec2{k.a, k.c} : Vec2{k.b, k.d};
    Int g = gcd_of(v.x, v.y);
    return {v.x / g, v.y / g};
}

// primitive v, completed to P = [v | w] with det 1
Mat2 complete_basis(const Vec2& v) {
    Int s, t;
    ext_gcd(v.x, v.y, s, t); // s x + t y = 1
    // det [[x, -t],[y, s]] = x s + t y = 1
    return Mat2(v.x, -t, v.y, s);
}

NormalForm parabolic_form(const Mat2& m) {
    int s = sign(m.trace()) > 0 ? 1 : -1;
    Mat2 k = m - Mat2(Int(s), Int(0), Int(0), Int(s));
    Vec2 v = image_direction(k);
    Mat2 p = complete_basis(v);
    Mat2 tn = s > 0 ? inverse(p) * m * p : -(inverse(p) * m * p);
    // tn = (1 n;0 1) by construction
    if (tn.a != 1 || tn.c != 0 || tn.d != 1) throw Error("internal: parabolic reduction failed for " + to_string(m));
    return {ConjClass{Parabolic{s, tn.b}}, Mat2(Int(s), s * tn.b, Int(0), Int(s)), inverse(p)};
}

NormalForm elliptic_form(const Mat2& m0) {
    int t = static_cast<int>(m0.trace().get_si());
    int rot = sign(m0.c);
    Mat2 m = m0, n;
    const Mat2 s = mat_S(), s_inv = inverse(mat_S());
    for (;;) {
        // fixed point z with Re z = (a-d)/2c, |z|^2 = -b/c; move Re z into [-1/2, 1/2)
        Int k = -floor_div(m.a - m.d + m.c, 2 * m.c);
        if (sign(k) != 0) {
            m = mat_T(k) * m * mat_T(-k);
            n = mat_T(k) * n;
        }
        bool inside = sign(m.c) > 0 ? (-m.b < m.c) : (-m.b > m.c);
        if (!inside) break;
        m = s * m * s_inv;
        n = s * n;
    }
    Mat2 rep = elliptic_rep(t, rot);
    if (m != rep) throw Error("internal: elliptic reduction failed for " + to_string(m0));
    return {ConjClass{Elliptic{t, rot}}, rep, n};
}

struct CfState {
    Int P, Q;
};

Int cf_floor(const Int& P, const Int& Q, const Int& s) {
    if (sign(Q) > 0) return floor_div(P + s, Q);
    return floor_div(-P - s - 1, -Q);
}

bool cf_reduced(const Int& P, const Int& Q, const Int& s) {
    return sign(Q) > 0 && sign(P) > 0 && P <= s && s - P < Q && Q <= s + P;
}

// Continued-fraction expansion of the attracting fixed point of m (irrational eigenvalues).
// Runs until a reduced state is met (at even depth when `even`), returns the accumulated
// convergent matrix and the reduced state.
Mat2 cf_reduce(const Mat2& m, bool even, CfState& st, Int& D, Int& s) {
    Int t = m.trace();
    D = t * t - 4 * m.det();
    s = isqrt(D);
    st.P = m.a - m.d;
    st.Q = 2 * m.c;
    if (sign(t) < 0) {
        st.P = -st.P;
        st.Q = -st.Q;
    }
    Mat2 conv;
    long depth = 0;
    while (!(cf_reduced(st.P, st.Q, s) && (!even || depth % 2 == 0))) {
        Int k = cf_floor(st.P, st.Q, s);
        conv = conv * Mat2(k, Int(1), Int(1), Int(0));
        st.P = k * st.Q - st.P;
        st.Q = (D - st.P * st.P) / st.Q;
        ++depth;
    }
    return conv;
}

std::string least_rotation(const std::string& w, size_t& best) {
    best = 0;
    std::string bw = w;
    for (size_t r = 1; r < w.size(); ++r) {
        std::string c = w.substr(r) + w.substr(0, r);
        // R sorts before L
        auto rl = [](char x, char y) { return x != y && x == 'R'; };
        if (std::lexicographical_compare(c.begin(), c.end(), bw.begin(), bw.end(), rl)) {
            bw = c;
            best = r;
        }
    }
    return bw;
}

NormalForm hyperbolic_form(const Mat2& m0) {
    int sg = sign(m0.trace()) > 0 ? 1 : -1;
    Mat2 m = sg > 0 ? m0 : -m0;
    CfState st;
    Int D, s;
    Mat2 conv = cf_reduce(m, true, st, D, s);
    Mat2 mp = inverse(conv) * m * conv;
    // factor the nonnegative matrix into R and L
    std::string w;
    Mat2 rest = mp;
    const Mat2 r_inv = inverse(mat_R()), l_inv = inverse(mat_L());
    while (!rest.is_identity()) {
        if (rest.a >= rest.c && rest.b >= rest.d) {
            w += 'R';
            rest = r_inv * rest;
        } else if (rest.c >= rest.a && rest.d >= rest.b) {
            w += 'L';
            rest = l_inv * rest;
        } else {
            throw Error("internal: hyperbolic factorisation failed for " + to_string(m0));
        }
        if (sign(rest.a) < 0 || sign(rest.b) < 0 || sign(rest.c) < 0 || sign(rest.d) < 0)
            throw Error("internal: hyperbolic factorisation failed for " + to_string(m0));
    }
    size_t r;
    std::string cw = least_rotation(w, r);
    Mat2 prefix = word_matrix(w.substr(0, r));
    Mat2 canon = word_matrix(cw);
    Mat2 n = inverse(prefix) * inverse(conv);
    if (sg < 0) canon = -canon;
    return {ConjClass{Hyperbolic{sg, cw}}, canon, n};
}

const Mat2& flip() {
    static const Mat2 d = Mat2::diag(1, -1);
    return d;
}

// GL(2,Z) normal form of a det -1 matrix: key and conjugator (det +-1).
struct GlForm {
    std::string key;
    Mat2 canonical;
    Mat2 conjugator;
};

Vec2 primitive_kernel(const Mat2& k) {
    // rank-1 matrix; kernel is orthogonal to a nonzero row
    Vec2 row = sign(k.a) != 0 || sign(k.b) != 0 ? Vec2{k.a, k.b} : Vec2{k.c, k.d};
    Vec2 v{-row.y, row.x};
    Int g = gcd_of(v.x, v.y);
    v = {v.x / g, v.y / g};
    if (sign(v.x) < 0 || (sign(v.x) == 0 && sign(v.y) < 0)) v = -v;
    return v;
}

GlForm gl_reflection_form(const Mat2& m) {
    Vec2 vp = primitive_kernel(m - Mat2::identity());
    Vec2 vm = primitive_kernel(m + Mat2::identity());
    Int idx = abs(vp.x * vm.y - vp.y * vm.x);
    if (idx == 1) {
        Mat2 p(vp.x, vm.x, vp.y, vm.y);
        return {"reflection:diag", flip(), inverse(p)};
    }
    Vec2 u{(vp.x + vm.x) / 2, (vp.y + vm.y) / 2};
    Vec2 mu = m * u;
    Mat2 p(u.x, mu.x, u.y, mu.y);
    return {"reflection:swap", Mat2(0L, 1L, 1L, 0L), inverse(p)};
}

GlForm gl_irrational_form(const Mat2& m) {
    CfState st;
    Int D, s;
    Mat2 conv = cf_reduce(m, false, st, D, s);
    Mat2 mp = inverse(conv) * m * conv;
    std::vector<Int> ks;
    CfState cur = st;
    do {
        Int k = cf_floor(cur.P, cur.Q, s);
        ks.push_back(k);
        cur.P = k * cur.Q - cur.P;
        cur.Q = (D - cur.P * cur.P) / cur.Q;
    } while (!(cur.P == st.P && cur.Q == st.Q));
    // least rotation of the period
    size_t n = ks.size(), best = 0;
    for (size_t r = 1; r < n; ++r) {
        for (size_t i = 0; i < n; ++i) {
            const Int& x = ks[(r + i) % n];
            const Int& y = ks[(best + i) % n];
            if (x != y) {
                if (x < y) best = r;
                break;
            }
        }
    }
    Mat2 prefix;
    for (size_t i = 0; i < best; ++i) prefix = prefix * Mat2(ks[i], Int(1), Int(1), Int(0));
    Mat2 e;
    std::string key = "cf:";
    for (size_t i = 0; i < n; ++i) {
        const Int& k = ks[(best + i) % n];
        e = e * Mat2(k, Int(1), Int(1), Int(0));
        key += k.get_str() + (i + 1 < n ? "," : "");
    }
    Mat2 c = inverse(prefix) * mp * prefix;
    int sg = sign(c.a) > 0 ? 1 : -1;
    Mat2 target = sg > 0 ? c : -c;
    Mat2 pw = e;
    long exp = 1;
    while (pw != target) {
        if (abs(pw.a) > abs(target.a) + 1) throw Error("internal: GL period power not found for " + to_string(m));
        pw = pw * e;
        ++exp;
    }
    key += ":" + std::to_string(exp) + ":" + signed_str(sg);
    return {key, c, inverse(prefix) * inverse(conv)};
}

GlForm gl_det_minus_one_form(const Mat2& m) {
    if (sign(m.trace()) == 0) return gl_reflection_form(m);
    return gl_irrational_form(m);
}

} // namespace

Mat2 word_matrix(const std::string& word) {
    Mat2 m;
    for (char ch : word) m = m * (ch == 'R' ? mat_R() : mat_L());
    return m;
}

std::string ConjClass::to_string() const {
    struct V {
        std::string operator()(const Central& c) const { return "Central(" + signed_str(c.sign) + ")"; }
        std::string operator()(const Elliptic& e) const {
            return "Elliptic(trace " + std::to_string(e.trace) + ", order " + std::to_string(e.order()) +
                   ", rotation " + signed_str(e.rotation) + ")";
        }
        std::string operator()(const Parabolic& p) const {
            return "Parabolic(" + signed_str(p.sign) + ", " + p.n.get_str() + ")";
        }
        std::string operator()(const Hyperbolic& h) const {
            return "Hyperbolic(" + signed_str(h.sign) + ", " + h.word + ")";
        }
    };
    return std::visit(V{}, kind);
}

bool ConjClass::is_unipotent() const {
    if (auto c = std::get_if<Central>(&kind)) return c->sign > 0;
    if (auto p = std::get_if<Parabolic>(&kind)) return p->sign > 0;
    return false;
}

Mat2 ConjClass::representative() const {
    struct V {
        Mat2 operator()(const Central& c) const { return Mat2::diag(c.sign, c.sign); }
        Mat2 operator()(const Elliptic& e) const { return elliptic_rep(e.trace, e.rotation); }
        Mat2 operator()(const Parabolic& p) const { return Mat2(Int(p.sign), p.sign * p.n, Int(0), Int(p.sign)); }
        Mat2 operator()(const Hyperbolic& h) const {
            Mat2 w = word_matrix(h.word);
            return h.sign > 0 ? w : -w;
        }
    };
    return std::visit(V{}, kind);
}

NormalForm normal_form(const Mat2& m) {
    if (m.det() != 1) throw NotInSL2Z("matrix " + to_string(m) + " has determinant " + m.det().get_str() + ", not in SL(2,Z)");
    if (sign(m.b) == 0 && sign(m.c) == 0 && m.a == m.d)
        return {ConjClass{Central{sign(m.a)}}, m, Mat2::identity()};
    Int t = abs(m.trace());
    if (t == 2) return parabolic_form(m);
    if (t < 2) return elliptic_form(m);
    return hyperbolic_form(m);
}

ConjClass classify(const Mat2& m) { return normal_form(m).cls; }

namespace {

ConjugacyResult sl_conjugate(const Mat2& m1, const Mat2& m2) {
    NormalForm f1 = normal_form(m1), f2 = normal_form(m2);
    if (f1.cls != f2.cls) return {};
    return {true, inverse(f2.conjugator) * f1.conjugator};
}

} // namespace

ConjugacyResult conjugate_in(const Mat2& m1, const Mat2& m2, Ambient ambient) {
    if (ambient == Ambient::SL2Z) {
        if (m1.det() != 1 || m2.det() != 1) throw NotInSL2Z("conjugate_in(SL2Z) needs determinant 1 inputs");
        return sl_conjugate(m1, m2);
    }
    if (!m1.unimodular() || !m2.unimodular()) throw Error("conjugate_in(GL2Z) needs determinant +-1 inputs");
    if (m1.det() != m2.det()) return {};
    if (m1.det() == 1) {
        auto r = sl_conjugate(m1, m2);
        if (r.conjugate) return r;
        // C m1 C^-1 = D m2 D  =>  (D C) m1 (D C)^-1 = m2
        r = sl_conjugate(m1, flip() * m2 * flip());
        if (r.conjugate) r.witness = flip() * *r.witness;
        return r;
    }
    GlForm g1 = gl_det_minus_one_form(m1), g2 = gl_det_minus_one_form(m2);
    if (g1.key != g2.key) return {};
    return {true, inverse(g2.conjugator) * g1.conjugator};
}

std::string gl_class_key(const Mat2& m) {
    if (!m.unimodular()) throw Error("gl_class_key needs a determinant +-1 matrix");
    if (m.det() == 1) {
        std::string a = classify(m).to_string(), b = classify(flip() * m * flip()).to_string();
        return "SL " + std::min(a, b);
    }
    return "GL- " + gl_det_minus_one_form(m).key;
}

FixedVector eigenvector_eigenvalue_one(const Mat2& m) {
    if (m.is_identity()) return {FixedVector::All, {}};
    Mat2 k = m - Mat2::identity();
    if (sign(k.det()) != 0) return {};
    return {FixedVector::Line, primitive_kernel(k)};
}

} // namespace gm4
