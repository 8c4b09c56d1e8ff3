#pragma once

#include <boost/rational.hpp>
#include <string>

namespace schelling {

// Exact arithmetic everywhere: utilities and welfare values are ratios of
// small integers, so boost::rational over long long never overflows at the
// instance sizes this library targets (thousands of nodes).
using Rational = boost::rational<long long>;

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace schelling
