#pragma once

#include "gm4/structure.hpp"

#include <vector>

namespace gm4 {

// Signature of the symmetrised form <(x1,y1),(x2,y2)> = w(x1 + y1, (I - B) y2) on
// V(A,B) = { (x,y) : (A^-1 - I) x + (B - I) y = 0 }, w(u,v) = u2 v1 - u1 v2.
int meyer_form_signature(const Mat2& a, const Mat2& b);

// Integer class function whose coboundary normalises the form signature so that
// tau(T^m, T^n) = 0 for the unipotent T = (1 1;0 1).
int meyer_correction(const Mat2& m);

// tau(A,B) = form signature + j(A) + j(B) - j(AB).
int meyer_cocycle(const Mat2& a, const Mat2& b);

// One factor of a generator decomposition: S^e, T^e or the central -I.
struct Factor {
    enum Kind { S, T, MinusI } kind;
    Int exponent; // S: +-1, T: any, MinusI: 1
    Mat2 matrix() const;
};

enum class Decomposition {
    Left,  // Euclid on the first column, floor quotients
    Right, // Euclid on the last row, nearest-integer quotients
};
std::vector<Factor> decompose(const Mat2& m, Decomposition how);

// Psi folded along a factor list: Psi(PG) = Psi(P) + Psi(G) - 3 tau(P, G).
Rational psi_of_factors(const std::vector<Factor>& factors);

Rational psi(const Mat2& m);

// (1/3) eps sum Psi(boundary monodromies), eps the block orientation (0 counts as +1)
Rational block_signature(const Block& b);

struct UnsupportedForSignature : Error {
    using Error::Error;
};

Rational manifold_signature(const GraphStructure& gs);

} // namespace gm4
