#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace llab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" in lowest terms, or "p" when q = 1.
std::string rational_string(const Rational& r);
double to_double(const Rational& r);
/// Parses "p/q", "p", or a finite decimal such as "0.25".
Rational parse_rational(const std::string& s);

}  // namespace llab
