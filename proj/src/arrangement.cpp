#include "arrcert/arrangement.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "arrcert/detail/box.hpp"

namespace arrcert {

Hyperplane::Hyperplane(std::vector<Int> normal)
    : normal_(primitive_integer_vector(normal)) {}

Hyperplane::Hyperplane(std::vector<Rat> normal)
    : normal_(primitive_integer_vector(normal)) {}

std::string Hyperplane::key() const {
  std::string out;
  for (std::size_t i = 0; i < normal_.size(); ++i) {
    if (i) out += ",";
    out += normal_[i].get_str();
  }
  return out;
}

Arrangement::Arrangement(int dim, std::vector<Hyperplane> hyperplanes)
    : dim_(dim), hyperplanes_(std::move(hyperplanes)), box_(std::make_shared<detail::LatticeBox>()) {
  if (dim < 0) throw std::invalid_argument("negative ambient dimension");
  for (const auto& h : hyperplanes_)
    if (static_cast<int>(h.dim()) != dim)
      throw std::invalid_argument("hyperplane dimension does not match the arrangement");
  std::sort(hyperplanes_.begin(), hyperplanes_.end());
  for (std::size_t i = 1; i < hyperplanes_.size(); ++i)
    if (hyperplanes_[i] == hyperplanes_[i - 1])
      throw std::invalid_argument("duplicate hyperplane " + hyperplanes_[i].key());
  key_ = "d" + std::to_string(dim_);
  for (const auto& h : hyperplanes_) key_ += "|" + h.key();
}

int Arrangement::rank() const {
  std::scoped_lock lock(box_->mutex);
  if (box_->rank < 0) {
    std::vector<std::vector<Int>> rows;
    rows.reserve(size());
    for (const auto& h : hyperplanes_) rows.push_back(h.normal());
    box_->rank = static_cast<int>(arrcert::rank(RatMatrix::from_int_rows(rows)));
  }
  return box_->rank;
}

std::optional<std::size_t> Arrangement::index_of(const Hyperplane& h) const {
  auto it = std::lower_bound(hyperplanes_.begin(), hyperplanes_.end(), h);
  if (it != hyperplanes_.end() && *it == h)
    return static_cast<std::size_t>(it - hyperplanes_.begin());
  return std::nullopt;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

// Strips a trailing comment and surrounding whitespace.
std::string strip(const std::string& line) {
  std::string s = line;
  if (auto pos = s.find('#'); pos != std::string::npos) s = s.substr(0, pos);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
  return s.substr(start);
}

struct ParsedLines {
  int dim = 0;
  std::vector<std::pair<int, std::vector<std::string>>> rows;  // line number + tokens
};

ParsedLines parse_lines(const std::string& text) {
  ParsedLines out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_dim = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = strip(line);
    if (s.empty()) continue;
    auto tokens = tokenize(s);
    if (!have_dim) {
      if (tokens.size() != 2 || tokens[0] != "dim")
        throw ParseError(ParseErrorKind::BadHeader, lineno, "expected header 'dim <l>'");
      try {
        out.dim = std::stoi(tokens[1]);
      } catch (const std::exception&) {
        throw ParseError(ParseErrorKind::BadHeader, lineno, "bad dimension '" + tokens[1] + "'");
      }
      if (out.dim < 1)
        throw ParseError(ParseErrorKind::BadHeader, lineno, "dimension must be positive");
      have_dim = true;
      continue;
    }
    out.rows.emplace_back(lineno, std::move(tokens));
  }
  if (!have_dim) throw ParseError(ParseErrorKind::BadHeader, lineno, "missing 'dim <l>' header");
  return out;
}

Hyperplane hyperplane_from_tokens(const std::vector<std::string>& tokens, int lineno) {
  std::vector<Rat> entries;
  entries.reserve(tokens.size());
  for (const auto& tok : tokens) {
    try {
      entries.push_back(parse_rational(tok));
    } catch (const std::invalid_argument&) {
      throw ParseError(ParseErrorKind::MalformedLine, lineno, "bad coefficient '" + tok + "'");
    }
  }
  try {
    return Hyperplane(entries);
  } catch (const std::invalid_argument&) {
    throw ParseError(ParseErrorKind::ZeroVector, lineno, "zero normal vector");
  }
}

}  // namespace

Arrangement parse_arrangement(const std::string& text) {
  const ParsedLines lines = parse_lines(text);
  std::vector<Hyperplane> planes;
  std::map<std::string, int> seen;
  for (const auto& [lineno, tokens] : lines.rows) {
    if (static_cast<int>(tokens.size()) != lines.dim)
      throw ParseError(ParseErrorKind::WrongDimension, lineno,
                       "expected " + std::to_string(lines.dim) + " coefficients, got " +
                           std::to_string(tokens.size()));
    Hyperplane h = hyperplane_from_tokens(tokens, lineno);
    if (auto [it, inserted] = seen.emplace(h.key(), lineno); !inserted)
      throw ParseError(ParseErrorKind::DuplicateHyperplane, lineno,
                       "duplicate of hyperplane on line " + std::to_string(it->second));
    planes.push_back(std::move(h));
  }
  return Arrangement(lines.dim, std::move(planes));
}

std::string to_arr_text(const Arrangement& a) {
  std::string out = "dim " + std::to_string(a.dim()) + "\n";
  for (const auto& h : a.hyperplanes()) {
    std::string line;
    for (std::size_t i = 0; i < h.normal().size(); ++i) {
      if (i) line += " ";
      line += h.normal()[i].get_str();
    }
    out += line + "\n";
  }
  return out;
}

Arrangement arrangement_from_key(const std::string& key) {
  if (key.empty() || key[0] != 'd') throw std::invalid_argument("bad arrangement key");
  std::size_t bar = key.find('|');
  const std::string dim_str = key.substr(1, bar == std::string::npos ? std::string::npos : bar - 1);
  const int dim = std::stoi(dim_str);
  std::vector<Hyperplane> planes;
  while (bar != std::string::npos) {
    const std::size_t next = key.find('|', bar + 1);
    const std::string entry =
        key.substr(bar + 1, next == std::string::npos ? std::string::npos : next - bar - 1);
    std::vector<Int> normal;
    std::size_t pos = 0;
    while (pos <= entry.size()) {
      const std::size_t comma = entry.find(',', pos);
      normal.emplace_back(entry.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    planes.emplace_back(std::move(normal));
    bar = next;
  }
  return Arrangement(dim, std::move(planes));
}

Arrangement weyl(WeylFamily family, int l) {
  if (l < 2) throw std::invalid_argument("weyl arrangements need dimension >= 2");
  std::vector<Hyperplane> planes;
  auto unit = [l](int i) {
    std::vector<Int> v(static_cast<std::size_t>(l));
    v[static_cast<std::size_t>(i)] = 1;
    return v;
  };
  auto pair = [l](int i, int j, int sign) {
    std::vector<Int> v(static_cast<std::size_t>(l));
    v[static_cast<std::size_t>(i)] = 1;
    v[static_cast<std::size_t>(j)] = sign;
    return v;
  };
  if (family == WeylFamily::B)
    for (int i = 0; i < l; ++i) planes.emplace_back(unit(i));
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      planes.emplace_back(pair(i, j, -1));
      if (family != WeylFamily::A) planes.emplace_back(pair(i, j, +1));
    }
  return Arrangement(l, std::move(planes));
}

WeylFamily weyl_family_from_string(const std::string& name) {
  if (name == "A" || name == "a") return WeylFamily::A;
  if (name == "B" || name == "b") return WeylFamily::B;
  if (name == "D" || name == "d") return WeylFamily::D;
  throw std::invalid_argument("unknown Weyl family '" + name + "' (expected A, B or D)");
}

Arrangement random_arrangement(int dim, int count, std::uint64_t seed) {
  if (dim < 1 || count < 0) throw std::invalid_argument("bad random arrangement parameters");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-3, 3);
  std::map<std::string, Hyperplane> planes;
  int attempts = 0;
  while (static_cast<int>(planes.size()) < count) {
    if (++attempts > 100000)
      throw std::runtime_error("could not generate enough distinct hyperplanes");
    std::vector<Int> v(static_cast<std::size_t>(dim));
    bool zero = true;
    for (auto& x : v) {
      const int e = entry(rng);
      x = e;
      if (e != 0) zero = false;
    }
    if (zero) continue;
    Hyperplane h(std::move(v));
    planes.emplace(h.key(), std::move(h));
  }
  std::vector<Hyperplane> list;
  list.reserve(planes.size());
  for (auto& [k, h] : planes) list.push_back(std::move(h));
  return Arrangement(dim, std::move(list));
}

Arrangement delete_hyperplane(const Arrangement& a, std::size_t h) {
  if (h >= a.size()) throw std::out_of_range("hyperplane index out of range");
  std::vector<Hyperplane> planes;
  planes.reserve(a.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (i != h) planes.push_back(a[i]);
  return Arrangement(a.dim(), std::move(planes));
}

namespace {

Bitset contained_hyperplanes(const Arrangement& a, const RatMatrix& key) {
  Bitset mask(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (in_row_space(key, a[i].normal())) mask.set(i);
  return mask;
}

Flat make_flat(const Arrangement& a, RatMatrix key) {
  Flat f;
  f.codim = static_cast<int>(key.rows());
  f.key_str = matrix_key(key);
  f.contained = contained_hyperplanes(a, key);
  f.key = std::move(key);
  return f;
}

}  // namespace

Flat flat_of(const Arrangement& a, const std::vector<int>& hyperplane_indices) {
  std::vector<std::vector<Int>> rows;
  rows.reserve(hyperplane_indices.size());
  for (int i : hyperplane_indices) {
    if (i < 0 || static_cast<std::size_t>(i) >= a.size())
      throw std::out_of_range("hyperplane index out of range");
    rows.push_back(a[static_cast<std::size_t>(i)].normal());
  }
  RatMatrix key = rows.empty() ? rref(RatMatrix(0, static_cast<std::size_t>(a.dim())))
                               : rref(RatMatrix::from_int_rows(rows));
  return make_flat(a, std::move(key));
}

Flat ambient_flat(const Arrangement& a) { return flat_of(a, {}); }

Flat flat_from_normals(const Arrangement& a, const std::vector<std::vector<Int>>& normals) {
  RatMatrix key = normals.empty() ? RatMatrix(0, static_cast<std::size_t>(a.dim()))
                                  : rref(RatMatrix::from_int_rows(normals));
  if (key.cols() != static_cast<std::size_t>(a.dim()) && !normals.empty())
    throw std::invalid_argument("normal length does not match the arrangement dimension");
  Flat f = make_flat(a, std::move(key));
  // Closure test: X belongs to L(A) iff it is the intersection of the
  // hyperplanes containing it.
  Flat closure = flat_of(a, f.contained.indices());
  if (closure.key_str != f.key_str)
    throw std::invalid_argument("subspace is not a flat of the arrangement");
  return f;
}

Arrangement localization(const Arrangement& a, const Flat& x) {
  Flat closure = flat_of(a, x.contained.indices());
  if (closure.key_str != x.key_str) throw std::invalid_argument("not a flat of this arrangement");
  std::vector<Hyperplane> planes;
  for (int i : x.contained.indices()) planes.push_back(a[static_cast<std::size_t>(i)]);
  return Arrangement(a.dim(), std::move(planes));
}

Restriction restriction(const Arrangement& a, const Flat& x) {
  Flat closure = flat_of(a, x.contained.indices());
  if (closure.key_str != x.key_str) throw std::invalid_argument("not a flat of this arrangement");

  const auto basis_cols = kernel_basis(x.key.rows() == 0
                                           ? RatMatrix(0, static_cast<std::size_t>(a.dim()))
                                           : x.key);
  const std::size_t sub_dim = basis_cols.size();
  RatMatrix basis(static_cast<std::size_t>(a.dim()), sub_dim);
  for (std::size_t j = 0; j < sub_dim; ++j)
    for (std::size_t i = 0; i < static_cast<std::size_t>(a.dim()); ++i)
      basis.at(i, j) = Rat(basis_cols[j][i]);

  struct Induced {
    Hyperplane h;
    std::vector<int> parents;
  };
  std::map<std::string, Induced> induced;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (x.contained.test(i)) continue;
    std::vector<Int> image(sub_dim);
    for (std::size_t j = 0; j < sub_dim; ++j) {
      Int dot = 0;
      for (std::size_t c = 0; c < static_cast<std::size_t>(a.dim()); ++c)
        dot += a[i].normal()[c] * basis_cols[j][c];
      image[j] = dot;
    }
    Hyperplane h(std::move(image));
    auto [it, inserted] = induced.emplace(h.key(), Induced{h, {}});
    it->second.parents.push_back(static_cast<int>(i));
  }

  std::vector<Hyperplane> planes;
  planes.reserve(induced.size());
  for (const auto& [k, entry] : induced) planes.push_back(entry.h);
  Arrangement arr(static_cast<int>(sub_dim), std::move(planes));

  Restriction out{std::move(arr), std::move(basis), {}, std::vector<int>(a.size(), -1)};
  out.fibers.resize(out.arr.size());
  for (const auto& [k, entry] : induced) {
    const auto idx = out.arr.index_of(entry.h);
    out.fibers[*idx] = entry.parents;
    for (int p : entry.parents) out.parent_to_induced[static_cast<std::size_t>(p)] = static_cast<int>(*idx);
  }
  return out;
}

Restriction restriction(const Arrangement& a, std::size_t h) {
  if (h >= a.size()) throw std::out_of_range("hyperplane index out of range");
  return restriction(a, flat_of(a, {static_cast<int>(h)}));
}

Essentialization essentialize(const Arrangement& a) {
  std::vector<std::vector<Int>> rows;
  rows.reserve(a.size());
  for (const auto& h : a.hyperplanes()) rows.push_back(h.normal());
  RatMatrix basis = rows.empty() ? RatMatrix(0, static_cast<std::size_t>(a.dim()))
                                 : rref(RatMatrix::from_int_rows(rows));
  const int r = static_cast<int>(basis.rows());
  if (r == a.dim()) return Essentialization{a, std::move(basis), 0};

  std::vector<std::size_t> pivots;
  for (std::size_t row = 0; row < basis.rows(); ++row) {
    std::size_t p = 0;
    while (p < basis.cols() && basis.at(row, p) == 0) ++p;
    pivots.push_back(p);
  }
  std::vector<Hyperplane> planes;
  planes.reserve(a.size());
  for (const auto& h : a.hyperplanes()) {
    std::vector<Int> coords(pivots.size());
    for (std::size_t i = 0; i < pivots.size(); ++i) coords[i] = h.normal()[pivots[i]];
    planes.emplace_back(std::move(coords));
  }
  return Essentialization{Arrangement(r, std::move(planes)), std::move(basis), a.dim() - r};
}

}  // namespace arrcert
