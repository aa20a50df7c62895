#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace qlab {

/// Arbitrary-precision rational scalar used throughout the exact layer.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

/// Parses "num", "num/den" or a plain integer string.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw std::domain_error("parse_rational: zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::domain_error("parse_rational: malformed rational '" + text + "'");
    }
}

/// x^k for integer k >= 0 with the empty-product convention x^0 = 1.
template <class T>
T ipow(T base, unsigned long k) {
    T result(1);
    while (k != 0) {
        if (k & 1UL) result = result * base;
        base = base * base;
        k >>= 1UL;
    }
    return result;
}

inline Integer factorial(unsigned n) {
    Integer f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

inline Integer double_factorial_odd(unsigned n) {  // (2n-1)!!
    Integer f = 1;
    for (unsigned k = 1; k <= n; ++k) f *= 2 * k - 1;
    return f;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Integer b = 1;
    for (unsigned j = 0; j < k; ++j) {
        b *= n - j;
        b /= j + 1;
    }
    return b;
}

}  // namespace qlab
