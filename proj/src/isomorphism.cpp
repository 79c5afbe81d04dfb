#include "gm4/assembly.hpp"

#include <atomic>
#include <functional>
#include <limits>

namespace gm4 {

namespace {

struct EdgeMatch {
    size_t edge;
    bool reversed;
};

struct Matching {
    std::vector<int> block_map;
    std::vector<EdgeMatch> edges;
};

std::optional<std::vector<EdgeMatch>> match_edges(const GraphStructure& g1, const GraphStructure& g2, const std::vector<int>& bm) {
    auto image = [&](const Endpoint& ep) {
        const Block& b1 = g1.block(ep.block);
        const Block& b2 = g2.blocks[bm[g1.block_index(ep.block)]];
        return Endpoint{b2.label, b2.boundary_labels[b1.boundary_index(ep.boundary)]};
    };
    std::vector<EdgeMatch> out;
    std::vector<bool> used(g2.edges.size(), false);
    for (const auto& e : g1.edges) {
        Endpoint s = image(e.source), t = image(e.target);
        bool found = false;
        for (size_t j = 0; j < g2.edges.size() && !found; ++j) {
            if (used[j]) continue;
            const Edge& f = g2.edges[j];
            if (f.source == s && f.target == t) {
                out.push_back({j, false});
                used[j] = found = true;
            } else if (f.source == t && f.target == s) {
                out.push_back({j, true});
                used[j] = found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    return out;
}

std::vector<Matching> matchings(const GraphStructure& g1, const GraphStructure& g2) {
    std::vector<Matching> out;
    const size_t n = g1.blocks.size();
    std::vector<int> bm(n, -1);
    std::vector<bool> taken(n, false);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == n) {
            if (auto em = match_edges(g1, g2, bm)) out.push_back({bm, *em});
            return;
        }
        for (size_t j = 0; j < n; ++j) {
            if (taken[j] || !(g1.blocks[i].surface() == g2.blocks[j].surface())) continue;
            taken[j] = true;
            bm[i] = static_cast<int>(j);
            rec(i + 1);
            taken[j] = false;
        }
        bm[i] = -1;
    };
    rec(0);
    return out;
}

bool intertwines(const Mat2& p, const Block& b1, const Block& b2) {
    for (size_t g = 0; g < b1.rep.images.size(); ++g)
        if (p * b1.rep.images[g] != b2.rep.images[g] * p) return false;
    return true;
}

BoundaryIso kappa(const Mat2& phi, const Mat2& p) { return fiber_map(TorusBundle{phi}, p, Pi1Element(0L, 0L, 1L)); }

// fiber matrix of h when h is a pure fiber change (t -> t), else nullopt
std::optional<Mat2> pure_fiber_change(const BoundaryIso& h) {
    if (!is_fiber_preserving(h) || h.t != Pi1Element(0L, 0L, 1L)) return std::nullopt;
    return fiber_matrix(h);
}

struct Context {
    const GraphStructure& g1;
    const GraphStructure& g2;
    std::vector<int> eps1, eps2;
};

std::optional<IsoWitness> try_matching(const Context& cx, const Matching& m, int bound) {
    const GraphStructure& g1 = cx.g1;
    const GraphStructure& g2 = cx.g2;
    const size_t n = g1.blocks.size();
    auto want_det = [&](size_t i) { return cx.eps1[i] * cx.eps2[m.block_map[i]]; };
    auto admissible = [&](size_t i, const Mat2& p) {
        return p.det() == want_det(i) && intertwines(p, g1.blocks[i], g2.blocks[m.block_map[i]]);
    };

    // per-edge maps in a common direction (source block of g1 -> target block of g1)
    struct EdgeData {
        size_t a, c;
        BoundaryIso f1, f2;
        Mat2 phi_a, phi_c;
    };
    std::vector<EdgeData> ed;
    for (size_t k = 0; k < g1.edges.size(); ++k) {
        const Edge& e = g1.edges[k];
        const Edge& f = g2.edges[m.edges[k].edge];
        ed.push_back({static_cast<size_t>(g1.block_index(e.source.block)), static_cast<size_t>(g1.block_index(e.target.block)), e.iso,
                      m.edges[k].reversed ? iso_inverse(f.iso) : f.iso, e.iso.source.phi, e.iso.target.phi});
    }

    const Block& root1 = g1.blocks[0];
    std::vector<std::pair<Mat2, Mat2>> pairs;
    for (size_t g = 0; g < root1.rep.images.size(); ++g)
        pairs.emplace_back(root1.rep.images[g], g2.blocks[m.block_map[0]].rep.images[g]);
    auto basis = intertwiner_basis(pairs);
    if (basis.empty()) return std::nullopt;
    const int r = static_cast<int>(basis.size());
    std::vector<int> coef(r, -bound);
    for (;;) {
        Int v[4];
        for (int i = 0; i < 4; ++i) {
            v[i] = 0;
            for (int j = 0; j < r; ++j) v[i] += coef[j] * basis[j][i];
        }
        Mat2 p0(v[0], v[1], v[2], v[3]);
        if (p0.det() == want_det(0)) {
            std::vector<std::optional<Mat2>> P(n);
            P[0] = p0;
            bool ok = true, changed = true;
            while (ok && changed) {
                changed = false;
                for (const auto& d : ed) {
                    if (P[d.a] && P[d.c]) {
                        if (!(iso_compose(d.f2, kappa(d.phi_a, *P[d.a])) == iso_compose(kappa(d.phi_c, *P[d.c]), d.f1))) ok = false;
                    } else if (P[d.a]) {
                        auto q = pure_fiber_change(iso_compose(iso_compose(d.f2, kappa(d.phi_a, *P[d.a])), iso_inverse(d.f1)));
                        if (!q || !admissible(d.c, *q)) ok = false;
                        else {
                            P[d.c] = *q;
                            changed = true;
                        }
                    } else if (P[d.c]) {
                        auto q = pure_fiber_change(iso_compose(iso_compose(iso_inverse(d.f2), kappa(d.phi_c, *P[d.c])), d.f1));
                        if (!q || !admissible(d.a, *q)) ok = false;
                        else {
                            P[d.a] = *q;
                            changed = true;
                        }
                    }
                    if (!ok) break;
                }
            }
            for (size_t i = 0; i < n && ok; ++i) ok = P[i].has_value();
            if (ok) {
                IsoWitness w;
                for (size_t i = 0; i < n; ++i) {
                    w.from.push_back(g1.blocks[i].label);
                    w.block_map.push_back(g2.blocks[m.block_map[i]].label);
                    w.fiber.push_back(*P[i]);
                }
                return w;
            }
        }
        int i = 0;
        while (i < r && coef[i] == bound) coef[i++] = -bound;
        if (i == r) break;
        ++coef[i];
    }
    return std::nullopt;
}

Comparison compare(const GraphStructure& g1, const GraphStructure& g2, int bound, bool parallel) {
    if (!is_reduced(g1).reduced || !is_reduced(g2).reduced)
        throw MustReduceFirst("isomorphic_reduced needs reduced structures; run reduce first");
    if (bound < 0) throw Error("search bound must be non-negative");
    InvariantReport r1 = invariant_report(g1), r2 = invariant_report(g2);
    Comparison c;
    std::string diff = r1.first_difference(r2);
    if (!diff.empty()) {
        c.answer = Comparison::No;
        c.separating = diff;
        return c;
    }
    Context cx{g1, g2, *solve_orientations(g1), *solve_orientations(g2)};
    auto ms = matchings(g1, g2);
    const long count = static_cast<long>(ms.size());
    std::vector<std::optional<IsoWitness>> found(ms.size());
    std::atomic<long> best{std::numeric_limits<long>::max()};
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < count; ++i) {
            if (i > best.load()) continue;
            found[i] = try_matching(cx, ms[i], bound);
            if (found[i]) {
                long cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
            }
        }
    } else {
        for (long i = 0; i < count; ++i) {
            found[i] = try_matching(cx, ms[i], bound);
            if (found[i]) {
                best = i;
                break;
            }
        }
    }
    if (best.load() != std::numeric_limits<long>::max()) {
        c.answer = Comparison::Yes;
        c.witness = found[best.load()];
    } else {
        c.answer = Comparison::Inconclusive;
    }
    return c;
}

} // namespace

Comparison isomorphic_reduced(const GraphStructure& gs1, const GraphStructure& gs2, int search_bound) {
    return compare(gs1, gs2, search_bound, true);
}

Comparison isomorphic_reduced_serial(const GraphStructure& gs1, const GraphStructure& gs2, int search_bound) {
    return compare(gs1, gs2, search_bound, false);
}

std::string Comparison::to_text() const {
    switch (answer) {
    case Yes: {
        std::string s = "Yes\n";
        for (size_t i = 0; i < witness->block_map.size(); ++i)
            s += "map: " + witness->from[i] + " -> " + witness->block_map[i] + " fiber " + to_string(witness->fiber[i]) + "\n";
        return s;
    }
    case No:
        return "No\nseparated by: " + separating + "\n";
    default:
        return "Inconclusive\n";
    }
}

} // namespace gm4
