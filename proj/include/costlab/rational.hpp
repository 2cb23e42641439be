#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace costlab {

// Every measure and cost in the library is an exact rational.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "p/q" in lowest terms, or "p" when q == 1.
std::string to_string(const Rational& r);

/// Parses "p", "p/q", a decimal ("0.001") or scientific ("1e-3") literal
/// exactly. Throws costlab::Error on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Smallest integer >= r.
BigInt ceil(const Rational& r);

inline Rational ratio(std::int64_t p, std::int64_t q) { return Rational(p, q); }

}  // namespace costlab
