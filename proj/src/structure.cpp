#include "gm4/structure.hpp"

#include <deque>
#include <map>
#include <set>

namespace gm4 {

int GraphStructure::block_index(const std::string& label) const {
    for (size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].label == label) return static_cast<int>(i);
    return -1;
}

const Block& GraphStructure::block(const std::string& label) const {
    int i = block_index(label);
    if (i < 0) throw Error("unknown block label '" + label + "'");
    return blocks[i];
}

Block& GraphStructure::block(const std::string& label) {
    int i = block_index(label);
    if (i < 0) throw Error("unknown block label '" + label + "'");
    return blocks[i];
}

Mat2 endpoint_monodromy(const GraphStructure& gs, const Endpoint& e) {
    const Block& b = gs.block(e.block);
    int k = b.boundary_index(e.boundary);
    if (k < 0) throw Error("unknown boundary label '" + e.to_string() + "'");
    return boundary_matrices(b.rep).at(k);
}

std::optional<std::vector<int>> solve_orientations(const GraphStructure& gs) {
    const size_t n = gs.blocks.size();
    std::vector<int> eps(n, 0);
    // constraint per edge: eps_s * eps_t = -deg
    std::vector<std::vector<std::pair<size_t, int>>> adj(n);
    for (const auto& e : gs.edges) {
        int s = gs.block_index(e.source.block), t = gs.block_index(e.target.block);
        int rel = -iso_degree(e.iso);
        if (s == t) {
            if (rel != 1) return std::nullopt; // self-glueing must reverse orientation
            continue;
        }
        adj[s].push_back({static_cast<size_t>(t), rel});
        adj[t].push_back({static_cast<size_t>(s), rel});
    }
    std::vector<bool> seen(n, false);
    for (size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        // collect the component, then pick the root sign from any declared block
        std::vector<size_t> comp;
        std::vector<int> rel(n, 0);
        std::deque<size_t> q{root};
        seen[root] = true;
        rel[root] = 1;
        bool ok = true;
        while (!q.empty()) {
            size_t u = q.front();
            q.pop_front();
            comp.push_back(u);
            for (auto [v, r] : adj[u]) {
                int want = rel[u] * r;
                if (!seen[v]) {
                    seen[v] = true;
                    rel[v] = want;
                    q.push_back(v);
                } else if (rel[v] != want) {
                    ok = false;
                }
            }
        }
        if (!ok) return std::nullopt;
        int flip = 0;
        for (size_t u : comp) {
            int declared = gs.blocks[u].orientation;
            if (declared == 0) continue;
            int f = declared * rel[u];
            if (flip != 0 && f != flip) return std::nullopt;
            flip = f;
        }
        if (flip == 0) flip = 1;
        for (size_t u : comp) eps[u] = flip * rel[u];
    }
    return eps;
}

Diagnostics validate_structure(const GraphStructure& gs) {
    Diagnostics out;
    std::set<std::string> labels;
    for (const auto& b : gs.blocks) {
        if (!labels.insert(b.label).second) out.push_back({"labels", "duplicate block label '" + b.label + "'"});
        auto d = validate_block(b);
        out.insert(out.end(), d.begin(), d.end());
        if (b.orientation != 0 && b.orientation != 1 && b.orientation != -1)
            out.push_back({"orientation", "block " + b.label + ": orientation must be + or -"});
    }
    if (!out.empty()) return out;
    if (gs.blocks.empty()) {
        out.push_back({"empty", "structure has no blocks"});
        return out;
    }

    std::map<std::pair<std::string, std::string>, int> use;
    bool edges_ok = true;
    for (size_t i = 0; i < gs.edges.size(); ++i) {
        const Edge& e = gs.edges[i];
        const std::string where = "edge " + e.source.to_string() + " -> " + e.target.to_string();
        bool known = true;
        for (const Endpoint* ep : {&e.source, &e.target}) {
            int bi = gs.block_index(ep->block);
            if (bi < 0 || gs.blocks[bi].boundary_index(ep->boundary) < 0) {
                out.push_back({"unknown-boundary", where + ": unknown boundary label '" + ep->to_string() + "'"});
                known = false;
                continue;
            }
            ++use[{ep->block, ep->boundary}];
        }
        if (!known) {
            edges_ok = false;
            continue;
        }
        if (e.source == e.target) {
            out.push_back({"self-boundary", where + ": a boundary component cannot be glued to itself"});
            edges_ok = false;
            continue;
        }
        Mat2 ms = endpoint_monodromy(gs, e.source), mt = endpoint_monodromy(gs, e.target);
        if (ms != e.iso.source.phi || mt != e.iso.target.phi) {
            out.push_back({"glueing-mismatch", where + ": glueing mismatch, iso is between M_" + to_string(e.iso.source.phi) +
                                                   " and M_" + to_string(e.iso.target.phi) + " but the boundaries are M_" +
                                                   to_string(ms) + " and M_" + to_string(mt)});
            edges_ok = false;
            continue;
        }
        auto d = validate_glueing(e.iso);
        for (auto& v : d) {
            out.push_back({v.code, where + ": " + v.message});
            edges_ok = false;
        }
    }
    for (const auto& b : gs.blocks)
        for (const auto& l : b.boundary_labels) {
            int n = use.count({b.label, l}) ? use[{b.label, l}] : 0;
            if (n == 0) out.push_back({"open-boundary", "open boundary: " + b.label + "." + l + " is not glued"});
            if (n > 1) out.push_back({"multiple-glueing", b.label + "." + l + " appears in " + std::to_string(n) + " edges"});
        }
    // connectivity
    std::vector<std::vector<int>> adj(gs.blocks.size());
    for (const auto& e : gs.edges) {
        int s = gs.block_index(e.source.block), t = gs.block_index(e.target.block);
        if (s < 0 || t < 0) continue;
        adj[s].push_back(t);
        adj[t].push_back(s);
    }
    std::vector<bool> seen(gs.blocks.size(), false);
    std::deque<int> q{0};
    seen[0] = true;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                q.push_back(v);
            }
    }
    for (size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) out.push_back({"disconnected", "block " + gs.blocks[i].label + " is not connected to " + gs.blocks[0].label});

    if (edges_ok && !solve_orientations(gs))
        out.push_back({"orientation", "orientation mismatch: no block orientations make every glueing reverse the boundary orientation"});
    return out;
}

ReducedCheck is_reduced(const GraphStructure& gs) {
    ReducedCheck r;
    for (size_t i = 0; i < gs.edges.size(); ++i)
        if (is_fiber_preserving(gs.edges[i].iso)) r.offending.push_back(i);
    r.reduced = r.offending.empty();
    return r;
}

} // namespace gm4
