#pragma once

#include "gm4/intmat.hpp"
#include "gm4/mat2.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gm4 {

// Compact surface with boundary. Presentation convention (free group on the generators):
//   [a1,b1] ... [ag,bg] x1^2 ... xh^2 c1 ... cb = 1,  c_b = ([a,b]... x^2... c1...c_{b-1})^-1
// with g = handles, h = crosscaps. Orientable iff h = 0. A non-orientable surface may carry
// handles as well (genus 2g + h); this is what merging produces.
struct Surface {
    int handles = 0;
    int crosscaps = 0;
    int boundaries = 1;

    static Surface orientable_surface(int genus, int boundaries) { return {genus, 0, boundaries}; }
    static Surface nonorientable_surface(int crosscaps, int boundaries) { return {0, crosscaps, boundaries}; }

    bool orientable() const { return crosscaps == 0; }
    int genus() const { return orientable() ? handles : 2 * handles + crosscaps; }
    long euler() const { return 2L - 2L * handles - crosscaps - boundaries; }
    int rank() const { return 2 * handles + crosscaps + boundaries - 1; }
    std::vector<std::string> generator_names() const;
    // homeomorphism type (orientability, genus, boundary count)
    std::string type_name() const;
    bool same_type(const Surface& o) const {
        return orientable() == o.orientable() && genus() == o.genus() && boundaries == o.boundaries;
    }
    bool operator==(const Surface& o) const {
        return handles == o.handles && crosscaps == o.crosscaps && boundaries == o.boundaries;
    }
};

struct MonodromyRep {
    Surface surface;
    std::vector<Mat2> images; // one per generator, in generator_names() order
};

// orientation: +1 / -1 relative to the fiber-then-base orientation of the data; 0 = unspecified.
struct Block {
    std::string label;
    MonodromyRep rep;
    std::vector<std::string> boundary_labels;
    int orientation = 0;

    const Surface& surface() const { return rep.surface; }
    int boundary_index(const std::string& label) const; // -1 if absent
};

struct Violation {
    std::string code;
    std::string message;
};
using Diagnostics = std::vector<Violation>;

std::string to_string(const Diagnostics& d);

Diagnostics validate_block(const Block& b);

Mat2 handle_product(const MonodromyRep& rep);   // image of [a1,b1]...[ag,bg]
Mat2 crosscap_product(const MonodromyRep& rep); // image of x1^2...xh^2
std::vector<Mat2> boundary_matrices(const MonodromyRep& rep);
std::vector<std::pair<std::string, Mat2>> boundary_monodromies(const Block& b);

struct TorusBundle {
    Mat2 phi;
    bool operator==(const TorusBundle& o) const { return phi == o.phi; }
};

// x^a y^b t^k in Z^2 x|_phi Z
struct Pi1Element {
    Int a, b, k;
    Pi1Element() = default;
    Pi1Element(Int a_, Int b_, Int k_) : a(std::move(a_)), b(std::move(b_)), k(std::move(k_)) {}
    Pi1Element(long a_, long b_, long k_) : a(a_), b(b_), k(k_) {}
    Pi1Element(const Vec2& w, Int k_) : a(w.x), b(w.y), k(std::move(k_)) {}
    Vec2 fiber() const { return {a, b}; }
    bool operator==(const Pi1Element& o) const { return a == o.a && b == o.b && k == o.k; }
    bool operator!=(const Pi1Element& o) const { return !(*this == o); }
};
std::string to_string(const Pi1Element& e); // (a,b,k)

Pi1Element pi1_mul(const TorusBundle& m, const Pi1Element& e1, const Pi1Element& e2);
Pi1Element pi1_inv(const TorusBundle& m, const Pi1Element& e);
Pi1Element pi1_pow(const TorusBundle& m, const Pi1Element& e, const Int& n);

// Glueing datum: images of x=(1,0,0), y=(0,1,0), t=(0,0,1) of the source inside the target group.
struct BoundaryIso {
    TorusBundle source, target;
    Pi1Element x, y, t;
    bool operator==(const BoundaryIso& o) const {
        return source == o.source && target == o.target && x == o.x && y == o.y && t == o.t;
    }
};

BoundaryIso identity_iso(const TorusBundle& m);
// fiber-preserving map: fiber w -> C w, t -> t_image; target monodromy computed from C and t_image
BoundaryIso fiber_map(const TorusBundle& source, const Mat2& c, const Pi1Element& t_image);

Diagnostics validate_glueing(const BoundaryIso& iso);
bool is_fiber_preserving(const BoundaryIso& iso);
Mat2 fiber_matrix(const BoundaryIso& iso); // columns: fiber parts of the images of x and y

Pi1Element iso_apply(const BoundaryIso& iso, const Pi1Element& e);
std::optional<Pi1Element> iso_preimage(const BoundaryIso& iso, const Pi1Element& e);
BoundaryIso iso_compose(const BoundaryIso& g, const BoundaryIso& f); // g after f
BoundaryIso iso_inverse(const BoundaryIso& f);

// +1 / -1: effect on the orientation of the 3-manifold (fiber then base); needs det phi = 1 on both sides.
int iso_degree(const BoundaryIso& iso);

// Z-basis (as (p,q,r,s) vectors) of { alpha : alpha m1 = m2 alpha for every pair (m1, m2) }.
std::vector<std::vector<Int>> intertwiner_basis(const std::vector<std::pair<Mat2, Mat2>>& pairs);

std::optional<Mat2> fiber_covering_exists(const Mat2& phi1, const Mat2& phi2);
bool fibration_unique(const TorusBundle& m);
AbelianGroup torus_bundle_homology(const TorusBundle& m);
bool square_root_closed(const Surface& s, int boundary_index);

struct OutOfScope : Error {
    using Error::Error;
};
bool orientation_reversing_self_diffeo_exists(const Mat2& phi);

} // namespace gm4
