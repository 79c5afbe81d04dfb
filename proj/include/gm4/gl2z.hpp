#pragma once

#include "gm4/mat2.hpp"

#include <optional>
#include <string>
#include <variant>

namespace gm4 {

struct Central {
    int sign; // M = sign * I
    bool operator==(const Central&) const = default;
};

// finite order, |trace| < 2. rotation = sign(c) separates M from M^-1 (S vs S^-1).
struct Elliptic {
    int trace;
    int rotation;
    int order() const { return trace == 0 ? 4 : (trace == 1 ? 6 : 3); }
    bool operator==(const Elliptic&) const = default;
};

// sign * (1 n;0 1), n != 0
struct Parabolic {
    int sign;
    Int n;
    bool operator==(const Parabolic& o) const { return sign == o.sign && n == o.n; }
};

// sign * (product of the word), word least rotation with R < L
struct Hyperbolic {
    int sign;
    std::string word;
    bool operator==(const Hyperbolic&) const = default;
};

struct ConjClass {
    std::variant<Central, Elliptic, Parabolic, Hyperbolic> kind;

    bool operator==(const ConjClass& o) const { return kind == o.kind; }
    bool operator!=(const ConjClass& o) const { return !(*this == o); }
    std::string to_string() const;
    bool is_parabolic() const { return std::holds_alternative<Parabolic>(kind); }
    // (1 n;0 1) for some n, identity included
    bool is_unipotent() const;
    // the canonical representative
    Mat2 representative() const;
};

// SL(2,Z) class. Throws NotInSL2Z on det != 1.
ConjClass classify(const Mat2& m);

// Canonical representative and a conjugator N with N m N^-1 = canonical.
struct NormalForm {
    ConjClass cls;
    Mat2 canonical;
    Mat2 conjugator;
};
NormalForm normal_form(const Mat2& m);

Mat2 word_matrix(const std::string& word); // R/L letters

enum class Ambient { SL2Z, GL2Z };

struct ConjugacyResult {
    bool conjugate = false;
    std::optional<Mat2> witness; // C with C m1 C^-1 = m2
};

ConjugacyResult conjugate_in(const Mat2& m1, const Mat2& m2, Ambient ambient);

// GL(2,Z) class key (deterministic string) for det +-1 matrices.
std::string gl_class_key(const Mat2& m);

struct FixedVector {
    enum Kind { None, All, Line } kind = None;
    Vec2 v; // primitive, first nonzero coordinate positive (kind == Line)
};
FixedVector eigenvector_eigenvalue_one(const Mat2& m);

} // namespace gm4
