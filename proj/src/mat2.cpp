#include "gm4/mat2.hpp"

#include <cctype>
#include <ostream>

namespace gm4 {

bool Mat2::operator<(const Mat2& m) const {
    if (a != m.a) return a < m.a;
    if (b != m.b) return b < m.b;
    if (c != m.c) return c < m.c;
    return d < m.d;
}

Mat2 inverse(const Mat2& m) {
    Int t = m.det();
    if (t == 1) return {m.d, -m.b, -m.c, m.a};
    if (t == -1) return {-m.d, m.b, m.c, -m.a};
    throw Error("matrix " + to_string(m) + " is not invertible over Z");
}

Mat2 power(const Mat2& m, const Int& n) {
    Mat2 base = sign(n) < 0 ? inverse(m) : m;
    Int e = abs(n);
    Mat2 acc;
    while (sign(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = acc * base;
        e >>= 1;
        if (sign(e) > 0) base = base * base;
    }
    return acc;
}

Mat2 power(const Mat2& m, long n) { return power(m, Int(n)); }

Mat2 conj(const Mat2& p, const Mat2& m) { return p * m * inverse(p); }

Mat2 commutator(const Mat2& x, const Mat2& y) { return x * y * inverse(x) * inverse(y); }

Mat2 transpose(const Mat2& m) { return {m.a, m.c, m.b, m.d}; }

std::string to_string(const Mat2& m) {
    return "[[" + m.a.get_str() + "," + m.b.get_str() + "],[" + m.c.get_str() + "," + m.d.get_str() + "]]";
}

std::string to_string(const Vec2& v) { return "(" + v.x.get_str() + "," + v.y.get_str() + ")"; }

std::ostream& operator<<(std::ostream& os, const Mat2& m) { return os << to_string(m); }

Mat2 parse_mat2(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    size_t pos = 0;
    auto expect = [&](char ch) {
        if (pos >= s.size() || s[pos] != ch)
            throw Error(std::string("matrix literal: expected '") + ch + "' in " + text);
        ++pos;
    };
    auto number = [&]() {
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || !std::isdigit(static_cast<unsigned char>(s[pos - 1])))
            throw Error("matrix literal: expected integer in " + text);
        std::string tok = s.substr(start, pos - start);
        if (tok[0] == '+') tok.erase(0, 1);
        return Int(tok);
    };
    expect('[');
    expect('[');
    Int a = number();
    expect(',');
    Int b = number();
    expect(']');
    expect(',');
    expect('[');
    Int c = number();
    expect(',');
    Int d = number();
    expect(']');
    expect(']');
    if (pos != s.size()) throw Error("matrix literal: trailing characters in " + text);
    return {a, b, c, d};
}

} // namespace gm4
