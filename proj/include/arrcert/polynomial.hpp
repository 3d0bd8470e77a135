#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arrcert/numbers.hpp"

namespace arrcert {

/// Univariate polynomial with exact integer coefficients, stored densely with
/// the lowest degree first. The zero polynomial has an empty coefficient list.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coeffs);

  static IntPolynomial constant(Int c);
  /// t^deg with the given coefficient.
  static IntPolynomial monomial(Int c, std::size_t deg);
  /// Expanded product of (t - r) over the given roots.
  static IntPolynomial from_roots(const std::vector<Int>& roots);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const Int& coeff(std::size_t k) const;
  const std::vector<Int>& coeffs() const { return coeffs_; }
  const Int& leading() const;
  bool is_monic() const { return !is_zero() && leading() == 1; }

  Int eval(const Int& x) const;

  IntPolynomial operator+(const IntPolynomial& other) const;
  IntPolynomial operator-(const IntPolynomial& other) const;
  IntPolynomial operator*(const IntPolynomial& other) const;
  bool operator==(const IntPolynomial& other) const = default;

  std::string str(const std::string& var = "t") const;

 private:
  std::vector<Int> coeffs_;
};

/// True iff q = p * r for some integer-coefficient polynomial r.
/// Performs exact division over the rationals and then checks integrality.
/// Throws std::invalid_argument when p is zero.
bool poly_divides(const IntPolynomial& p, const IntPolynomial& q);

/// Integer-coefficient quotient q / p, or nullopt when the division is not
/// exact over the integers. Throws when p is zero.
std::optional<IntPolynomial> divide_exact(const IntPolynomial& q, const IntPolynomial& p);

/// Full multiset of integer roots (d_1,...,d_n), ascending, when the monic
/// input splits into integer linear factors; nullopt otherwise. Works by
/// repeated trial division by the divisors of the constant term.
/// Throws std::invalid_argument on non-monic input.
std::optional<std::vector<Int>> integer_root_split(const IntPolynomial& p);

/// "(t-1)(t-2)(t-3)^2"-style rendering when the polynomial splits over the
/// integers (monic inputs only), falling back to the raw form otherwise.
std::string factored_str(const IntPolynomial& p, const std::string& var = "t");

}  // namespace arrcert
