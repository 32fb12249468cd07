#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace torman {

// Exact arbitrary-precision integer. Every coefficient in the library is one
// of these; no floating point appears anywhere.
using Int = boost::multiprecision::cpp_int;

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd(Int a, Int b) {
    a = abs(a);
    b = abs(b);
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

// g = gcd(a,b) together with p, q such that p*a + q*b = g (g >= 0).
struct ExtGcd {
    Int g, p, q;
};

inline ExtGcd ext_gcd(const Int& a, const Int& b) {
    Int old_r = a, r = b;
    Int old_p = 1, p = 0;
    Int old_q = 0, q = 1;
    while (r != 0) {
        Int quot = old_r / r;
        Int t = old_r - quot * r; old_r = r; r = t;
        t = old_p - quot * p; old_p = p; p = t;
        t = old_q - quot * q; old_q = q; q = t;
    }
    if (old_r < 0) { old_r = -old_r; old_p = -old_p; old_q = -old_q; }
    return {old_r, old_p, old_q};
}

inline Int gcd_vec(const std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    return g;
}

inline std::string to_string(const Int& a) { return a.str(); }

} // namespace torman
