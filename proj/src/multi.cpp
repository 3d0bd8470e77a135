#include "arrcert/multi.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace arrcert {

Multiarrangement::Multiarrangement(Arrangement base, std::vector<Int> multiplicities)
    : base_(std::move(base)), mult_(std::move(multiplicities)) {
  if (mult_.size() != base_.size())
    throw std::invalid_argument("multiplicity count does not match the arrangement");
  for (const auto& m : mult_)
    if (m < 1) throw std::invalid_argument("multiplicities must be positive");
}

Int Multiarrangement::total_multiplicity() const {
  Int total = 0;
  for (const auto& m : mult_) total += m;
  return total;
}

std::string Multiarrangement::key() const {
  std::string out = base_.key() + "!m";
  for (std::size_t i = 0; i < mult_.size(); ++i) {
    if (i) out += ",";
    out += mult_[i].get_str();
  }
  return out;
}

Multiarrangement parse_multiarrangement(const std::string& text) {
  // Reuse the .arr parser by splitting the trailing multiplicity column.
  std::istringstream in(text);
  std::string line;
  std::string arr_text;
  std::vector<std::pair<Hyperplane, Int>> entries;
  int dim = -1;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = line;
    if (auto pos = s.find('#'); pos != std::string::npos) s = s.substr(0, pos);
    std::istringstream ls(s);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (dim < 0) {
      if (tokens.size() != 2 || tokens[0] != "dim")
        throw ParseError(ParseErrorKind::BadHeader, lineno, "expected header 'dim <l>'");
      try {
        dim = std::stoi(tokens[1]);
      } catch (const std::exception&) {
        throw ParseError(ParseErrorKind::BadHeader, lineno, "bad dimension '" + tokens[1] + "'");
      }
      if (dim < 1) throw ParseError(ParseErrorKind::BadHeader, lineno, "dimension must be positive");
      continue;
    }
    if (static_cast<int>(tokens.size()) != dim + 1)
      throw ParseError(ParseErrorKind::WrongDimension, lineno,
                       "expected " + std::to_string(dim) + " coefficients plus a multiplicity");
    Int mult;
    try {
      mult = Int(tokens.back());
    } catch (const std::invalid_argument&) {
      throw ParseError(ParseErrorKind::BadMultiplicity, lineno,
                       "bad multiplicity '" + tokens.back() + "'");
    }
    if (mult < 1)
      throw ParseError(ParseErrorKind::BadMultiplicity, lineno, "multiplicity must be positive");
    std::vector<Rat> normal;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
      try {
        normal.push_back(parse_rational(tokens[i]));
      } catch (const std::invalid_argument&) {
        throw ParseError(ParseErrorKind::MalformedLine, lineno, "bad coefficient '" + tokens[i] + "'");
      }
    }
    try {
      entries.emplace_back(Hyperplane(normal), mult);
    } catch (const std::invalid_argument&) {
      throw ParseError(ParseErrorKind::ZeroVector, lineno, "zero normal vector");
    }
  }
  if (dim < 0) throw ParseError(ParseErrorKind::BadHeader, lineno, "missing 'dim <l>' header");
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size(); ++j)
      if (entries[i].first == entries[j].first)
        throw ParseError(ParseErrorKind::DuplicateHyperplane, lineno,
                         "duplicate hyperplane " + entries[i].first.key());
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Hyperplane> planes;
  std::vector<Int> mults;
  for (auto& [h, m] : entries) {
    planes.push_back(std::move(h));
    mults.push_back(std::move(m));
  }
  return Multiarrangement(Arrangement(dim, std::move(planes)), std::move(mults));
}

std::string to_marr_text(const Multiarrangement& m) {
  std::string out = "dim " + std::to_string(m.base().dim()) + "\n";
  for (std::size_t i = 0; i < m.base().size(); ++i) {
    std::string line;
    for (const auto& x : m.base()[i].normal()) {
      line += x.get_str();
      line += " ";
    }
    line += m.multiplicity(i).get_str();
    out += line + "\n";
  }
  return out;
}

Multiarrangement ziegler_restriction(const Arrangement& a, std::size_t h) {
  const Restriction res = restriction(a, h);
  std::vector<Int> mults(res.arr.size());
  for (std::size_t i = 0; i < res.arr.size(); ++i) mults[i] = Int(res.fibers[i].size());
  return Multiarrangement(res.arr, std::move(mults));
}

namespace {

// Convolution of dense integer coefficient lists.
std::vector<Int> conv(const std::vector<Int>& p, const std::vector<Int>& q) {
  std::vector<Int> out(p.size() + q.size() - 1);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

std::vector<Int> poly_pow(const std::vector<Int>& p, std::size_t k) {
  std::vector<Int> out{Int(1)};
  for (std::size_t i = 0; i < k; ++i) out = conv(out, p);
  return out;
}

// A degree-e logarithmic derivation f d/dx + g d/dy exists iff the stacked
// divisibility constraints have a nontrivial kernel. Each hyperplane
// ax + by = 0 of multiplicity mu contributes min(mu, e+1) linear conditions:
// the low-order coefficients of a f + b g rewritten in the (alpha, beta)
// basis, alpha = ax + by, beta = -bx + ay.
bool derivation_exists(const std::vector<std::pair<Int, Int>>& lines,
                       const std::vector<Int>& mults, long e) {
  const std::size_t width = static_cast<std::size_t>(e) + 1;
  std::vector<std::vector<Int>> rows;
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const auto& [a, b] = lines[idx];
    const std::size_t conditions =
        mults[idx] < Int(static_cast<long>(width)) ? static_cast<std::size_t>(mults[idx].get_si())
                                                   : width;
    // T[i][k]: coefficient of alpha^i beta^{e-i} in (a alpha - b beta)^k
    // (b alpha + a beta)^{e-k}; column k corresponds to the monomial x^k y^{e-k}.
    std::vector<std::vector<Int>> cols(width);
    const std::vector<Int> lin_x{-b, a};  // x scaled by a^2+b^2
    const std::vector<Int> lin_y{a, b};   // y scaled by a^2+b^2
    for (std::size_t k = 0; k < width; ++k)
      cols[k] = conv(poly_pow(lin_x, k), poly_pow(lin_y, width - 1 - k));
    for (std::size_t i = 0; i < conditions; ++i) {
      std::vector<Int> row(2 * width);
      for (std::size_t k = 0; k < width; ++k) {
        row[k] = a * cols[k][i];
        row[width + k] = b * cols[k][i];
      }
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) return true;
  return rank(RatMatrix::from_int_rows(rows)) < 2 * width;
}

}  // namespace

ExponentPair rank2_exponents(const Multiarrangement& m) {
  const Arrangement& base = m.base();
  const int r = base.rank();
  if (r > 2) throw std::invalid_argument("rank2_exponents needs a base of rank at most 2");
  const Int total = m.total_multiplicity();
  if (r == 0) return ExponentPair{Int(0), Int(0)};
  if (r == 1) return ExponentPair{Int(0), total};

  // Reduce to two coordinates on the essential 2-space spanned by the normals.
  std::vector<std::vector<Int>> normals;
  normals.reserve(base.size());
  for (const auto& h : base.hyperplanes()) normals.push_back(h.normal());
  const RatMatrix basis = rref(RatMatrix::from_int_rows(normals));
  std::vector<std::size_t> pivots;
  for (std::size_t row = 0; row < basis.rows(); ++row) {
    std::size_t p = 0;
    while (p < basis.cols() && basis.at(row, p) == 0) ++p;
    pivots.push_back(p);
  }
  std::vector<std::pair<Int, Int>> lines;
  lines.reserve(base.size());
  for (const auto& n : normals) lines.emplace_back(n[pivots[0]], n[pivots[1]]);

  // d1 <= |m|/2 because the exponents sum to |m|; the search must succeed.
  const long limit = static_cast<long>(mpz_class(total / 2).get_si());
  for (long e = 0; e <= limit; ++e)
    if (derivation_exists(lines, m.multiplicities(), e)) return ExponentPair{Int(e), total - e};
  throw std::logic_error("rank-2 exponent search failed to terminate");
}

Int multi_b2(const Multiarrangement& m) {
  const Arrangement& base = m.base();
  std::map<std::string, RatMatrix> flats;
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      RatMatrix key = rref(RatMatrix::from_int_rows({base[i].normal(), base[j].normal()}));
      if (key.rows() != 2) continue;
      flats.emplace(matrix_key(key), std::move(key));
    }
  Int total = 0;
  for (const auto& [k, key] : flats) {
    std::vector<Hyperplane> local;
    std::vector<Int> local_mult;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (!in_row_space(key, base[i].normal())) continue;
      local.push_back(base[i]);
      local_mult.push_back(m.multiplicity(i));
    }
    const Multiarrangement localized(Arrangement(base.dim(), std::move(local)), std::move(local_mult));
    const ExponentPair exp = rank2_exponents(localized);
    total += exp.d1 * exp.d2;
  }
  return total;
}

Multiarrangement perturb(const Multiarrangement& m, std::size_t h, int sign) {
  if (h >= m.base().size()) throw std::out_of_range("hyperplane index out of range");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  std::vector<Int> mults = m.multiplicities();
  if (sign == 1) {
    mults[h] += 1;
    return Multiarrangement(m.base(), std::move(mults));
  }
  if (mults[h] > 1) {
    mults[h] -= 1;
    return Multiarrangement(m.base(), std::move(mults));
  }
  // Multiplicity 1 going down: the hyperplane leaves the support.
  mults.erase(mults.begin() + static_cast<long>(h));
  return Multiarrangement(delete_hyperplane(m.base(), h), std::move(mults));
}

Int b2_drop(const Multiarrangement& m, std::size_t h) {
  if (h >= m.base().size()) throw std::out_of_range("hyperplane index out of range");
  if (m.multiplicity(h) < 2) throw std::invalid_argument("b2_drop requires multiplicity >= 2");
  return multi_b2(m) - multi_b2(perturb(m, h, -1));
}

}  // namespace arrcert
