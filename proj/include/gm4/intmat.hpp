#pragma once

#include "gm4/integer.hpp"

#include <string>
#include <vector>

namespace gm4 {

// Dense integer matrix, row major. Small sizes only (homology presentations, kernels).
struct IntMatrix {
    size_t rows = 0, cols = 0;
    std::vector<Int> data;

    IntMatrix() = default;
    IntMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * c) {}

    Int& operator()(size_t i, size_t j) { return data[i * cols + j]; }
    const Int& operator()(size_t i, size_t j) const { return data[i * cols + j]; }

    void append_row(const std::vector<Int>& row);
};

// Nonzero diagonal entries of the Smith normal form, positive, each dividing the next.
std::vector<Int> smith_invariants(IntMatrix m);

// Z-basis of { x : m x = 0 }.
std::vector<std::vector<Int>> integer_kernel(const IntMatrix& m);

// Sylvester inertia of a symmetric rational matrix: (#positive) - (#negative).
int symmetric_signature(const std::vector<std::vector<Rational>>& g);

// Finitely generated abelian group Z^rank + sum Z/t_i, t_i > 1 and t_i | t_{i+1}.
struct AbelianGroup {
    size_t rank = 0;
    std::vector<Int> torsion;

    bool operator==(const AbelianGroup& o) const { return rank == o.rank && torsion == o.torsion; }
    bool operator!=(const AbelianGroup& o) const { return !(*this == o); }
    std::string to_string() const; // e.g. "Z^2 + Z/2"
};

// Group on `gens` generators modulo the given relation rows (each row has `gens` entries).
AbelianGroup presentation_group(const IntMatrix& relations, size_t gens);

} // namespace gm4
