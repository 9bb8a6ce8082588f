#pragma once

// Exact integer/rational scalar types and the handful of floor/ceil/sqrt
// helpers the enumeration code needs. GMP backs everything; no floating
// point is used anywhere in the library.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace k3gauss {

using Int = mpz_class;
using Rat = mpq_class;

// mpz_class has no long long overloads; this platform's long is 64-bit
inline Int to_int(long long v) { return Int(static_cast<long>(v)); }

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int gcd(const std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    return g;
}

// mpq_class(num, den) does not canonicalize; this does.
inline Rat rat(const Int& num, const Int& den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Int floor_rat(const Rat& q) {
    return floor_div(q.get_num(), q.get_den());
}

inline Int ceil_rat(const Rat& q) {
    return ceil_div(q.get_num(), q.get_den());
}

inline std::string to_string(const Int& x) { return x.get_str(); }
inline std::string to_string(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    return c.get_den() == 1 ? c.get_num().get_str() : c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace k3gauss
