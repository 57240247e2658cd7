#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace gvb {

/// Exact rational scalar. Arbitrary precision so canonical forms never
/// saturate or round.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational rational_pow(const Rational& base, unsigned exp) {
    Rational acc{1};
    Rational b = base;
    unsigned e = exp;
    while (e != 0) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

/// Renders as "p" or "p/q" with q > 0.
inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace gvb
