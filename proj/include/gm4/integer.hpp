#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace gm4 {

using Int = mpz_class;
using Rational = mpq_class;

inline int sign(const Int& x) { return mpz_sgn(x.get_mpz_t()); }
inline int sign(const Rational& x) { return mpq_sgn(x.get_mpq_t()); }
template <class T, class U>
inline int sign(const __gmp_expr<T, U>& e) { return sign(__gmp_expr<T, T>(e)); }

// floor(a / b), b != 0
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int gcd_of(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int isqrt(const Int& a) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

// g = gcd(a, b) = s*a + t*b
inline Int ext_gcd(const Int& a, const Int& b, Int& s, Int& t) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// p/q, or p when the denominator is 1
inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_string(const Int& x) { return x.get_str(); }

// Base for every error the library raises deliberately.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotInSL2Z : Error {
    using Error::Error;
};

struct ArithmeticOverflow : Error {
    using Error::Error;
};

} // namespace gm4
