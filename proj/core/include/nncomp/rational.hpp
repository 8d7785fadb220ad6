#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace nncomp {

// Exact arbitrary-precision arithmetic. Every quantity in this library is an
// Int or a Rational; floating point is banned so that distance ties are
// detected exactly.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline Int to_integer(const Rational& r) {
  if (!is_integer(r)) throw std::invalid_argument("rational is not an integer: " + r.str());
  return numerator(r);
}

/// Number of bits in |v|, with bits(0) = 1.
inline int bit_length(const Int& v) {
  if (v == 0) return 1;
  return static_cast<int>(msb(abs(v))) + 1;
}

/// Bit-complexity of a single coordinate: bits of |numerator| plus bits of
/// the denominator, each at least 1.
inline int bit_size(const Rational& r) {
  return bit_length(numerator(r)) + bit_length(denominator(r));
}

inline Int int_sqrt_floor(const Int& v) {
  if (v < 0) throw std::invalid_argument("int_sqrt_floor of negative value");
  return sqrt(v);
}

/// Parses "p/q" or "p". Inverse of Rational::str().
Rational parse_rational(const std::string& s);

/// lcm of the denominators of a list of rationals (>= 1).
Int common_denominator(const std::vector<Rational>& values);

}  // namespace nncomp
