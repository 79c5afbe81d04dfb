#pragma once

#include "gm4/bundles.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gm4 {

struct Endpoint {
    std::string block;
    std::string boundary;
    bool operator==(const Endpoint& o) const { return block == o.block && boundary == o.boundary; }
    std::string to_string() const { return block + "." + boundary; }
};

// iso maps the source boundary group onto the target boundary group
struct Edge {
    Endpoint source, target;
    BoundaryIso iso;
};

struct GraphStructure {
    std::vector<Block> blocks;
    std::vector<Edge> edges;

    int block_index(const std::string& label) const; // -1 if absent
    const Block& block(const std::string& label) const;
    Block& block(const std::string& label);
};

// boundary monodromy at an endpoint; throws Error on unknown labels
Mat2 endpoint_monodromy(const GraphStructure& gs, const Endpoint& e);

Diagnostics validate_structure(const GraphStructure& gs);

// Orientation signs for all blocks: declared signs are kept, the rest are solved along the
// edges (each glueing must reverse the induced boundary orientations). nullopt if impossible.
std::optional<std::vector<int>> solve_orientations(const GraphStructure& gs);

struct ReducedCheck {
    bool reduced = true;
    std::vector<size_t> offending; // indices of fiber-preserving edges
};
ReducedCheck is_reduced(const GraphStructure& gs);

} // namespace gm4
