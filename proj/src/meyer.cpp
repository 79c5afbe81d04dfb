#include "gm4/meyer.hpp"

#include <algorithm>

namespace gm4 {

namespace {

void require_sl(const Mat2& m, const char* what) {
    if (m.det() != 1) throw NotInSL2Z(std::string(what) + ": " + to_string(m) + " is not in SL(2,Z)");
}

// w(u, v) = u2 v1 - u1 v2
Int omega(const Int& u1, const Int& u2, const Int& v1, const Int& v2) { return u2 * v1 - u1 * v2; }

} // namespace

int meyer_form_signature(const Mat2& a, const Mat2& b) {
    require_sl(a, "meyer_cocycle");
    require_sl(b, "meyer_cocycle");
    Mat2 ai = inverse(a) - Mat2::identity();
    Mat2 bi = b - Mat2::identity();
    IntMatrix sys(2, 4);
    sys(0, 0) = ai.a, sys(0, 1) = ai.b, sys(0, 2) = bi.a, sys(0, 3) = bi.b;
    sys(1, 0) = ai.c, sys(1, 1) = ai.d, sys(1, 2) = bi.c, sys(1, 3) = bi.d;
    auto basis = integer_kernel(sys);
    const size_t n = basis.size();
    if (n == 0) return 0;
    Mat2 ib = Mat2::identity() - b;
    auto form = [&](const std::vector<Int>& v, const std::vector<Int>& w) {
        Vec2 u{v[0] + v[2], v[1] + v[3]};
        Vec2 z = ib * Vec2{w[2], w[3]};
        return omega(u.x, u.y, z.x, z.y);
    };
    std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g[i][j] = Rational(form(basis[i], basis[j]) + form(basis[j], basis[i]));
    return symmetric_signature(g);
}

int meyer_correction(const Mat2& m) {
    if (sign(m.c) != 0) {
        Int t = m.trace();
        Int r = 2 - abs(t - 1);
        return sign(r) > 0 ? -sign(m.c) * static_cast<int>(r.get_si()) : 0;
    }
    if (m.trace() == 2) return sign(m.b);
    return 0;
}

int meyer_cocycle(const Mat2& a, const Mat2& b) {
    return meyer_form_signature(a, b) + meyer_correction(a) + meyer_correction(b) - meyer_correction(a * b);
}

Mat2 Factor::matrix() const {
    switch (kind) {
    case S:
        return sign(exponent) > 0 ? mat_S() : inverse(mat_S());
    case T:
        return mat_T(exponent);
    default:
        return Mat2::diag(-1, -1);
    }
}

std::vector<Factor> decompose(const Mat2& m, Decomposition how) {
    require_sl(m, "decompose");
    std::vector<Factor> out;
    if (how == Decomposition::Left) {
        // m = T^q1 S T^q2 S ... (+-) T^n
        Mat2 cur = m;
        const Mat2 s_inv = inverse(mat_S());
        while (sign(cur.c) != 0) {
            Int q = floor_div(cur.a, cur.c);
            if (sign(q) != 0) {
                out.push_back({Factor::T, q});
                cur = mat_T(-q) * cur;
            }
            out.push_back({Factor::S, Int(1)});
            cur = s_inv * cur;
        }
        if (sign(cur.a) < 0) {
            out.push_back({Factor::MinusI, Int(1)});
            cur = -cur;
        }
        if (sign(cur.b) != 0) out.push_back({Factor::T, cur.b});
        return out;
    }
    // m = (+-) T^n S^-1 T^q_k ... S^-1 T^q_1, peeled from the right with nearest quotients
    std::vector<Factor> rev;
    Mat2 cur = m;
    while (sign(cur.c) != 0) {
        // q = round(d / c)
        Int q = floor_div(2 * cur.d + cur.c, 2 * cur.c);
        if (sign(q) != 0) {
            rev.push_back({Factor::T, q});
            cur = cur * mat_T(-q);
        }
        rev.push_back({Factor::S, Int(-1)});
        cur = cur * mat_S();
    }
    if (sign(cur.a) < 0) {
        out.push_back({Factor::MinusI, Int(1)});
        cur = -cur;
    }
    if (sign(cur.b) != 0) out.push_back({Factor::T, cur.b});
    out.insert(out.end(), rev.rbegin(), rev.rend());
    return out;
}

namespace {

// Psi on a finite-order element X of order k: k Psi(X) = 3 sum_{i=1}^{k-1} tau(X^i, X)
Rational torsion_psi(const Mat2& x, int order) {
    Int acc = 0;
    Mat2 p = x;
    for (int i = 1; i < order; ++i) {
        acc += meyer_cocycle(p, x);
        p = p * x;
    }
    if (!p.is_identity()) throw Error("internal: torsion order mismatch");
    Rational r(3 * acc, order);
    r.canonicalize();
    return r;
}

struct BaseValues {
    Rational s, s_inv, t, minus_i;
};

const BaseValues& base_values() {
    static const BaseValues v = [] {
        BaseValues b;
        Mat2 s = mat_S(), si = inverse(mat_S());
        Mat2 u = s * mat_R(); // order 6
        b.s = torsion_psi(s, 4);
        b.s_inv = torsion_psi(si, 4);
        Rational pu = torsion_psi(u, 6);
        b.t = b.s_inv + pu - 3 * meyer_cocycle(si, u); // T = S^-1 U
        b.minus_i = torsion_psi(Mat2::diag(-1, -1), 2);
        return b;
    }();
    return v;
}

// Psi(X^n) from Psi(X) by binary folding
Rational psi_power(const Mat2& x, const Rational& px, const Int& n) {
    if (sign(n) == 0) return 0;
    if (sign(n) < 0) {
        Mat2 xi = inverse(x);
        // Psi(X) + Psi(X^-1) - 3 tau(X, X^-1) = Psi(I) = 0
        Rational pxi = 3 * meyer_cocycle(x, xi) - px;
        return psi_power(xi, pxi, -n);
    }
    Mat2 acc;
    Rational pacc = 0;
    Mat2 base = x;
    Rational pbase = px;
    Int e = n;
    bool first = true;
    while (sign(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            if (first) {
                acc = base;
                pacc = pbase;
                first = false;
            } else {
                pacc = pacc + pbase - 3 * meyer_cocycle(acc, base);
                acc = acc * base;
            }
        }
        e >>= 1;
        if (sign(e) > 0) {
            pbase = 2 * pbase - 3 * meyer_cocycle(base, base);
            base = base * base;
        }
    }
    return pacc;
}

Rational factor_psi(const Factor& f) {
    const BaseValues& b = base_values();
    switch (f.kind) {
    case Factor::S:
        return sign(f.exponent) > 0 ? b.s : b.s_inv;
    case Factor::T:
        return psi_power(mat_R(), b.t, f.exponent);
    default:
        return b.minus_i;
    }
}

} // namespace

Rational psi_of_factors(const std::vector<Factor>& factors) {
    Mat2 acc;
    Rational p = 0;
    for (const auto& f : factors) {
        Mat2 g = f.matrix();
        p = p + factor_psi(f) - 3 * meyer_cocycle(acc, g);
        acc = acc * g;
    }
    return p;
}

Rational psi(const Mat2& m) {
    require_sl(m, "psi");
    return psi_of_factors(decompose(m, Decomposition::Left));
}

Rational block_signature(const Block& b) {
    if (!b.surface().orientable())
        throw UnsupportedForSignature("block " + b.label + ": signature needs an orientable base");
    for (const auto& m : b.rep.images)
        if (m.det() != 1) throw UnsupportedForSignature("block " + b.label + ": signature needs SL(2,Z) monodromy");
    Rational s = 0;
    for (const auto& m : boundary_matrices(b.rep)) s += psi(m);
    s /= 3;
    if (b.orientation < 0) s = -s;
    return s;
}

Rational manifold_signature(const GraphStructure& gs) {
    auto eps = solve_orientations(gs);
    if (!eps) throw Error("structure admits no consistent orientation");
    Rational s = 0;
    for (size_t i = 0; i < gs.blocks.size(); ++i) {
        Block b = gs.blocks[i];
        b.orientation = (*eps)[i];
        s += block_signature(b);
    }
    return s;
}

} // namespace gm4
