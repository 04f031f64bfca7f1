#pragma once

#include <cstdio>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace fqrank {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational probability. All bound and oracle comparisons are done on
/// these; floating point appears only in rendered output.
using Rational = boost::multiprecision::cpp_rational;

inline std::string fraction_str(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Safe even when numerator/denominator individually overflow a double.
inline double to_double(const Rational& r) {
    using Wide = boost::multiprecision::cpp_bin_float_50;
    return (Wide(numerator(r)) / Wide(denominator(r))).convert_to<double>();
}

/// 12 significant digits.
inline std::string decimal_str(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string decimal_str(const Rational& r) { return decimal_str(to_double(r)); }

}  // namespace fqrank
