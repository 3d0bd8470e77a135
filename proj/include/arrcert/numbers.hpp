#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace arrcert {

/// Arbitrary-precision integer. All arithmetic in the library is exact.
using Int = mpz_class;

/// Arbitrary-precision rational, kept reduced with positive denominator.
using Rat = mpq_class;

/// Builds a reduced rational from a numerator/denominator pair.
/// Throws std::invalid_argument on a zero denominator.
Rat make_rat(const Int& num, const Int& den);

/// Parses "p" or "p/q" (optional leading '-'). Throws on malformed input.
Rat parse_rational(const std::string& text);

std::string to_string(const Int& v);
std::string to_string(const Rat& v);

/// Scales a nonzero rational vector to its canonical primitive integer form:
/// integer entries with gcd 1 and first nonzero entry positive.
/// Throws std::invalid_argument on the zero vector.
std::vector<Int> primitive_integer_vector(const std::vector<Rat>& v);
std::vector<Int> primitive_integer_vector(const std::vector<Int>& v);

}  // namespace arrcert
