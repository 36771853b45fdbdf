#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace jtree {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) { return Rational(x); }

// "num/den" or plain integer string.
Rational parse_rational(const std::string& s);

// Canonical "num/den" form ("n" when the denominator is 1).
std::string rational_to_string(const Rational& r);

}  // namespace jtree
