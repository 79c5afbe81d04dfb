#include "gm4/intmat.hpp"

#include <algorithm>
#include <utility>

namespace gm4 {

void IntMatrix::append_row(const std::vector<Int>& row) {
    if (rows == 0 && cols == 0) cols = row.size();
    if (row.size() != cols) throw Error("IntMatrix: row length mismatch");
    data.insert(data.end(), row.begin(), row.end());
    ++rows;
}

std::vector<Int> smith_invariants(IntMatrix m) {
    const size_t R = m.rows, C = m.cols;
    std::vector<Int> diag;
    size_t t = 0;
    while (t < R && t < C) {
        // smallest nonzero entry in the remaining block
        size_t pi = R, pj = C;
        for (size_t i = t; i < R; ++i)
            for (size_t j = t; j < C; ++j)
                if (sign(m(i, j)) != 0 && (pi == R || abs(m(i, j)) < abs(m(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == R) break;
        for (size_t j = 0; j < C; ++j) std::swap(m(t, j), m(pi, j));
        for (size_t i = 0; i < R; ++i) std::swap(m(i, t), m(i, pj));

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < R; ++i) {
                if (sign(m(i, t)) == 0) continue;
                Int q = floor_div(m(i, t), m(t, t));
                for (size_t j = t; j < C; ++j) m(i, j) -= q * m(t, j);
                if (sign(m(i, t)) != 0) {
                    for (size_t j = t; j < C; ++j) std::swap(m(t, j), m(i, j));
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < C; ++j) {
                if (sign(m(t, j)) == 0) continue;
                Int q = floor_div(m(t, j), m(t, t));
                for (size_t i = t; i < R; ++i) m(i, j) -= q * m(i, t);
                if (sign(m(t, j)) != 0) {
                    for (size_t i = t; i < R; ++i) std::swap(m(i, t), m(i, j));
                    clean = false;
                }
            }
            if (!clean) continue;
            // pivot must divide the rest of the block
            for (size_t i = t + 1; i < R && clean; ++i)
                for (size_t j = t + 1; j < C; ++j)
                    if (sign(m(i, j) % m(t, t)) != 0) {
                        for (size_t k = t; k < C; ++k) m(t, k) += m(i, k);
                        clean = false;
                        break;
                    }
        }
        diag.push_back(abs(m(t, t)));
        ++t;
    }
    return diag;
}

std::vector<std::vector<Int>> integer_kernel(const IntMatrix& m) {
    const size_t R = m.rows, C = m.cols;
    IntMatrix a = m;
    IntMatrix u(C, C);
    for (size_t j = 0; j < C; ++j) u(j, j) = 1;
    auto col_swap = [&](size_t x, size_t y) {
        for (size_t i = 0; i < R; ++i) std::swap(a(i, x), a(i, y));
        for (size_t i = 0; i < C; ++i) std::swap(u(i, x), u(i, y));
    };
    auto col_sub = [&](size_t dst, size_t src, const Int& q) { // col dst -= q col src
        for (size_t i = 0; i < R; ++i) a(i, dst) -= q * a(i, src);
        for (size_t i = 0; i < C; ++i) u(i, dst) -= q * u(i, src);
    };
    size_t r = 0;
    for (size_t i = 0; i < R && r < C; ++i) {
        for (;;) {
            size_t best = C;
            for (size_t j = r; j < C; ++j)
                if (sign(a(i, j)) != 0 && (best == C || abs(a(i, j)) < abs(a(i, best)))) best = j;
            if (best == C) break;
            if (best != r) col_swap(best, r);
            bool done = true;
            for (size_t j = r + 1; j < C; ++j) {
                if (sign(a(i, j)) == 0) continue;
                col_sub(j, r, floor_div(a(i, j), a(i, r)));
                if (sign(a(i, j)) != 0) done = false;
            }
            if (done) {
                ++r;
                break;
            }
        }
    }
    std::vector<std::vector<Int>> basis;
    for (size_t j = r; j < C; ++j) {
        std::vector<Int> v(C);
        for (size_t i = 0; i < C; ++i) v[i] = u(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

int symmetric_signature(const std::vector<std::vector<Rational>>& g0) {
    auto g = g0;
    const size_t n = g.size();
    int sig = 0;
    std::vector<bool> used(n, false);
    for (size_t step = 0; step < n; ++step) {
        size_t p = n;
        for (size_t i = 0; i < n; ++i)
            if (!used[i] && sign(g[i][i]) != 0) {
                p = i;
                break;
            }
        if (p == n) {
            // all remaining diagonal entries vanish; use e_i + e_j on a nonzero off-diagonal entry
            size_t pi = n, pj = n;
            for (size_t i = 0; i < n && pi == n; ++i)
                for (size_t j = i + 1; j < n; ++j)
                    if (!used[i] && !used[j] && sign(g[i][j]) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) break;
            for (size_t k = 0; k < n; ++k) g[pi][k] += g[pj][k];
            for (size_t k = 0; k < n; ++k) g[k][pi] += g[k][pj];
            p = pi;
        }
        used[p] = true;
        sig += sign(g[p][p]);
        for (size_t i = 0; i < n; ++i) {
            if (used[i] || sign(g[i][p]) == 0) continue;
            Rational f = g[i][p] / g[p][p];
            for (size_t k = 0; k < n; ++k) g[i][k] -= f * g[p][k];
            for (size_t k = 0; k < n; ++k) g[k][i] -= f * g[k][p];
        }
    }
    return sig;
}

std::string AbelianGroup::to_string() const {
    std::string s;
    if (rank > 0) s = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
    for (const auto& t : torsion) {
        if (!s.empty()) s += " + ";
        s += "Z/" + t.get_str();
    }
    return s.empty() ? "0" : s;
}

AbelianGroup presentation_group(const IntMatrix& relations, size_t gens) {
    AbelianGroup g;
    auto inv = relations.rows == 0 ? std::vector<Int>{} : smith_invariants(relations);
    g.rank = gens - inv.size();
    for (const auto& d : inv)
        if (d > 1) g.torsion.push_back(d);
    std::sort(g.torsion.begin(), g.torsion.end());
    return g;
}

} // namespace gm4
