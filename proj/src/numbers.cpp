#include "arrcert/numbers.hpp"

#include <stdexcept>

namespace arrcert {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(Int(text));
    }
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    return make_rat(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational literal '" + text + "'");
  }
}

std::string to_string(const Int& v) { return v.get_str(); }

std::string to_string(const Rat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::vector<Int> primitive_integer_vector(const std::vector<Rat>& v) {
  Int lcm_den = 1;
  for (const auto& x : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den().get_mpz_t());
  std::vector<Int> ints;
  ints.reserve(v.size());
  for (const auto& x : v) ints.push_back(x.get_num() * (lcm_den / x.get_den()));
  return primitive_integer_vector(ints);
}

std::vector<Int> primitive_integer_vector(const std::vector<Int>& v) {
  Int g = 0;
  int first_sign = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (first_sign == 0 && x != 0) first_sign = sgn(x);
  }
  if (first_sign == 0) throw std::invalid_argument("zero vector cannot be made primitive");
  if (first_sign < 0) g = -g;
  std::vector<Int> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x / g);
  return out;
}

}  // namespace arrcert
