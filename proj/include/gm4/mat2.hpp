#pragma once

#include "gm4/integer.hpp"

#include <array>
#include <iosfwd>
#include <string>

namespace gm4 {

struct Vec2 {
    Int x, y;
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
};

inline Vec2 operator*(const Int& s, const Vec2& v) { return {s * v.x, s * v.y}; }

// [[a,b],[c,d]], row major. Group operations assume det = +-1.
struct Mat2 {
    Int a{1}, b{0}, c{0}, d{1};

    Mat2() = default;
    Mat2(Int a_, Int b_, Int c_, Int d_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
    Mat2(long a_, long b_, long c_, long d_) : a(a_), b(b_), c(c_), d(d_) {}

    static Mat2 identity() { return {}; }
    static Mat2 diag(long p, long q) { return Mat2(p, 0L, 0L, q); }

    Int det() const { return a * d - b * c; }
    Int trace() const { return a + d; }
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
    bool unimodular() const { Int t = det(); return t == 1 || t == -1; }

    Mat2 operator*(const Mat2& m) const {
        return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
    }
    Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
    Mat2 operator-(const Mat2& m) const { return {a - m.a, b - m.b, c - m.c, d - m.d}; }
    Mat2 operator+(const Mat2& m) const { return {a + m.a, b + m.b, c + m.c, d + m.d}; }

    bool operator==(const Mat2& m) const { return a == m.a && b == m.b && c == m.c && d == m.d; }
    bool operator!=(const Mat2& m) const { return !(*this == m); }
    // lexicographic on (a,b,c,d); used only for deterministic tie-breaks
    bool operator<(const Mat2& m) const;
};

// the three generators used throughout
inline Mat2 mat_R() { return Mat2(1L, 1L, 0L, 1L); }
inline Mat2 mat_L() { return Mat2(1L, 0L, 1L, 1L); }
inline Mat2 mat_S() { return Mat2(0L, -1L, 1L, 0L); }
inline Mat2 mat_T(const Int& n) { return Mat2(Int(1), n, Int(0), Int(1)); }

// throws Error unless det = +-1
Mat2 inverse(const Mat2& m);
Mat2 power(const Mat2& m, long n);
Mat2 power(const Mat2& m, const Int& n);
Mat2 conj(const Mat2& p, const Mat2& m); // p m p^-1
Mat2 commutator(const Mat2& x, const Mat2& y); // x y x^-1 y^-1
Mat2 transpose(const Mat2& m);

std::string to_string(const Mat2& m); // [[a,b],[c,d]]
std::string to_string(const Vec2& v);
std::ostream& operator<<(std::ostream& os, const Mat2& m);

// accepts [[a,b],[c,d]] with optional whitespace; throws Error on syntax
Mat2 parse_mat2(const std::string& text);

} // namespace gm4
