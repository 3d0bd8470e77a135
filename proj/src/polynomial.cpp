#include "arrcert/polynomial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace arrcert {

namespace {

void normalize(std::vector<Int>& coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
  normalize(coeffs_);
}

IntPolynomial IntPolynomial::constant(Int c) { return IntPolynomial({std::move(c)}); }

IntPolynomial IntPolynomial::monomial(Int c, std::size_t deg) {
  std::vector<Int> coeffs(deg + 1);
  coeffs[deg] = std::move(c);
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial IntPolynomial::from_roots(const std::vector<Int>& roots) {
  IntPolynomial p = constant(1);
  for (const auto& r : roots) p = p * IntPolynomial({-r, 1});
  return p;
}

const Int& IntPolynomial::coeff(std::size_t k) const {
  static const Int zero = 0;
  return k < coeffs_.size() ? coeffs_[k] : zero;
}

const Int& IntPolynomial::leading() const {
  if (is_zero()) throw std::logic_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Int IntPolynomial::eval(const Int& x) const {
  Int acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& other) const {
  std::vector<Int> out(std::max(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + other.coeff(i);
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& other) const {
  std::vector<Int> out(std::max(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) - other.coeff(i);
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& other) const {
  if (is_zero() || other.is_zero()) return IntPolynomial();
  std::vector<Int> out(coeffs_.size() + other.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  return IntPolynomial(std::move(out));
}

std::string IntPolynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (long k = degree(); k >= 0; --k) {
    const Int& c = coeff(static_cast<std::size_t>(k));
    if (c == 0) continue;
    Int a = abs(c);
    if (out.empty())
      out += (c < 0 ? "-" : "");
    else
      out += (c < 0 ? " - " : " + ");
    const bool unit = (a == 1) && k > 0;
    if (!unit) out += a.get_str();
    if (k > 0) {
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

std::optional<IntPolynomial> divide_exact(const IntPolynomial& q, const IntPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  if (q.is_zero()) return IntPolynomial();
  if (q.degree() < p.degree()) return std::nullopt;

  // Long division over the rationals, tracked with rational coefficients.
  std::vector<Rat> rem(q.coeffs().size());
  for (std::size_t i = 0; i < rem.size(); ++i) rem[i] = Rat(q.coeff(i));
  const long dq = q.degree(), dp = p.degree();
  std::vector<Rat> quot(static_cast<std::size_t>(dq - dp) + 1);
  const Rat lead_inv = Rat(1) / Rat(p.leading());
  for (long k = dq - dp; k >= 0; --k) {
    const Rat c = rem[static_cast<std::size_t>(k + dp)] * lead_inv;
    quot[static_cast<std::size_t>(k)] = c;
    if (c == 0) continue;
    for (long i = 0; i <= dp; ++i)
      rem[static_cast<std::size_t>(k + i)] -= c * Rat(p.coeff(static_cast<std::size_t>(i)));
  }
  for (const auto& r : rem)
    if (r != 0) return std::nullopt;
  std::vector<Int> iq(quot.size());
  for (std::size_t i = 0; i < quot.size(); ++i) {
    if (quot[i].get_den() != 1) return std::nullopt;
    iq[i] = quot[i].get_num();
  }
  return IntPolynomial(std::move(iq));
}

bool poly_divides(const IntPolynomial& p, const IntPolynomial& q) {
  return divide_exact(q, p).has_value();
}

namespace {

// Positive divisors of |n| (n != 0), ascending.
std::vector<Int> positive_divisors(const Int& n) {
  Int a = abs(n);
  std::vector<Int> small, large;
  for (Int d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      small.push_back(d);
      if (d * d != a) large.push_back(a / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Synthetic division by (t - r); requires r to be a root.
IntPolynomial deflate(const IntPolynomial& p, const Int& r) {
  const auto& c = p.coeffs();
  std::vector<Int> out(c.size() - 1);
  Int carry = 0;
  for (std::size_t k = c.size(); k-- > 1;) {
    carry = c[k] + carry * r;
    out[k - 1] = carry;
  }
  return IntPolynomial(std::move(out));
}

}  // namespace

std::optional<std::vector<Int>> integer_root_split(const IntPolynomial& p) {
  if (!p.is_monic()) throw std::invalid_argument("integer_root_split requires a monic polynomial");
  IntPolynomial cur = p;
  std::vector<Int> roots;
  while (cur.degree() > 0) {
    if (cur.coeff(0) == 0) {
      roots.push_back(0);
      cur = deflate(cur, 0);
      continue;
    }
    bool found = false;
    for (const Int& d : positive_divisors(cur.coeff(0))) {
      for (const Int& cand : {d, Int(-d)}) {
        if (cur.eval(cand) == 0) {
          roots.push_back(cand);
          cur = deflate(cur, cand);
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) return std::nullopt;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::string factored_str(const IntPolynomial& p, const std::string& var) {
  if (!p.is_zero() && p.is_monic() && p.degree() >= 1) {
    if (auto roots = integer_root_split(p)) {
      std::map<Int, int> mult;
      for (const auto& r : *roots) ++mult[r];
      std::string out;
      for (const auto& [root, k] : mult) {
        std::string base;
        if (root == 0)
          base = var;
        else if (root < 0)
          base = "(" + var + "+" + abs(root).get_str() + ")";
        else
          base = "(" + var + "-" + root.get_str() + ")";
        out += base;
        if (k > 1) out += "^" + std::to_string(k);
      }
      return out;
    }
  }
  return p.str(var);
}

}  // namespace arrcert
