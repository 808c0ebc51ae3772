#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace cuspidal {

// Exact arithmetic for root/weight coefficients and classification
// predicates. Numerators stay tiny (order n^2), so 64 bits is plenty.
using Rational = boost::rational<long long>;

inline Rational rat(long long num, long long den = 1) { return Rational(num, den); }

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

} // namespace cuspidal
