#pragma once

#include "gm4/gl2z.hpp"
#include "gm4/meyer.hpp"
#include "gm4/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gm4 {

// ---- reduction ----

struct ReductionError : Error {
    using Error::Error;
};

// Presentation moves on one block. Each keeps the manifest describing the same manifold:
// incident glueings are re-based through the induced boundary isomorphisms.
void fiber_change(GraphStructure& gs, const std::string& block, const Mat2& q); // images -> q img q^-1
void move_boundary_last(GraphStructure& gs, const std::string& block, const std::string& boundary);
void mirror_base(GraphStructure& gs, const std::string& block);
// Contract one fiber-preserving edge (distinct blocks merge; a self-edge adds genus).
void contract_edge(GraphStructure& gs, size_t edge);

// Fixes every block orientation, then contracts fiber-preserving edges until none is left.
// Throws ReductionError when everything collapses onto a closed base.
GraphStructure reduce(const GraphStructure& gs);

// ---- invariants ----

long euler_characteristic(const GraphStructure& gs);
AbelianGroup first_homology(const GraphStructure& gs);

struct InvariantReport {
    size_t block_count = 0;
    std::vector<std::string> blocks;      // sorted "surface type: [boundary classes]"
    std::vector<std::string> decomposing; // sorted "{class, class}" per edge
    std::optional<Rational> sigma;        // absent when a base is non-orientable
    std::string sigma_note;
    long euler = 0;
    AbelianGroup h1;
    bool reduced = false;
    std::vector<std::string> findings;

    std::string to_text() const;
    // first field that differs, empty if none
    std::string first_difference(const InvariantReport& o) const;
};

InvariantReport invariant_report(const GraphStructure& gs);

// ---- comparison ----

struct MustReduceFirst : Error {
    using Error::Error;
};

struct IsoWitness {
    std::vector<std::string> from;      // labels of gs1 blocks
    std::vector<std::string> block_map; // block_map[i] = label in gs2 of block i of gs1
    std::vector<Mat2> fiber;            // fiber change applied to block i
};

struct Comparison {
    enum Answer { Yes, No, Inconclusive } answer = Inconclusive;
    std::optional<IsoWitness> witness;
    std::string separating; // for No
    std::string to_text() const;
};

// Matchings are tried in parallel (OpenMP); the lowest-index successful matching wins, so the
// answer and witness equal those of the serial reference.
Comparison isomorphic_reduced(const GraphStructure& gs1, const GraphStructure& gs2, int search_bound);
Comparison isomorphic_reduced_serial(const GraphStructure& gs1, const GraphStructure& gs2, int search_bound);

} // namespace gm4
