#include "arrcert/lattice.hpp"

#include <map>

#include "arrcert/detail/box.hpp"

namespace arrcert {

IntersectionLattice::IntersectionLattice(const Arrangement& a) {
  const std::size_t dim = static_cast<std::size_t>(a.dim());
  levels_.emplace_back();
  levels_[0].push_back(Entry{flat_of(a, {}), Int(1)});

  while (true) {
    const auto& cur = levels_.back();
    std::map<std::string, Flat> next;
    for (const auto& entry : cur) {
      const Flat& x = entry.flat;
      for (std::size_t h = 0; h < a.size(); ++h) {
        if (x.contained.test(h)) continue;
        RatMatrix stacked(x.key.rows() + 1, dim);
        for (std::size_t r = 0; r < x.key.rows(); ++r)
          for (std::size_t c = 0; c < dim; ++c) stacked.at(r, c) = x.key.at(r, c);
        for (std::size_t c = 0; c < dim; ++c) stacked.at(x.key.rows(), c) = Rat(a[h].normal()[c]);
        RatMatrix key = rref(stacked);
        std::string key_str = matrix_key(key);
        if (next.contains(key_str)) continue;
        Flat f;
        f.codim = static_cast<int>(key.rows());
        f.key_str = key_str;
        Bitset mask(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
          if (in_row_space(key, a[i].normal())) mask.set(i);
        f.contained = std::move(mask);
        f.key = std::move(key);
        next.emplace(std::move(key_str), std::move(f));
      }
    }
    if (next.empty()) break;
    std::vector<Entry> level;
    level.reserve(next.size());
    for (auto& [k, f] : next) level.push_back(Entry{std::move(f), Int(0)});
    levels_.push_back(std::move(level));
  }

  // Moebius values, top-down: mu(V) = 1 and, for X below V,
  // mu(X) = -sum of mu(Y) over flats Y strictly containing X.
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    for (auto& entry : levels_[i]) {
      Int acc = 0;
      for (std::size_t j = 0; j < i; ++j)
        for (const auto& upper : levels_[j])
          if (upper.flat.contained.subset_of(entry.flat.contained)) acc += upper.moebius;
      entry.moebius = -acc;
    }
  }
}

std::size_t IntersectionLattice::flat_count() const {
  std::size_t n = 0;
  for (const auto& level : levels_) n += level.size();
  return n;
}

const IntersectionLattice& lattice_of(const Arrangement& a) {
  auto& box = a.box();
  std::scoped_lock lock(box.mutex);
  if (!box.lattice) box.lattice = std::make_shared<const IntersectionLattice>(a);
  return *box.lattice;
}

IntPolynomial char_poly(const Arrangement& a) {
  const auto& lat = lattice_of(a);
  std::vector<Int> coeffs(static_cast<std::size_t>(a.dim()) + 1);
  for (const auto& level : lat.levels())
    for (const auto& entry : level)
      coeffs[static_cast<std::size_t>(a.dim() - entry.flat.codim)] += entry.moebius;
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial poincare_poly(const Arrangement& a) {
  const auto& lat = lattice_of(a);
  std::vector<Int> coeffs(static_cast<std::size_t>(lat.rank()) + 1);
  for (const auto& level : lat.levels())
    for (const auto& entry : level) {
      const int c = entry.flat.codim;
      coeffs[static_cast<std::size_t>(c)] += (c % 2 == 0) ? entry.moebius : -entry.moebius;
    }
  return IntPolynomial(std::move(coeffs));
}

std::vector<Int> betti_numbers(const Arrangement& a) { return poincare_poly(a).coeffs(); }

Int b2(const Arrangement& a) {
  // Codimension-2 flats from pairwise intersections; no full lattice needed.
  std::map<std::string, RatMatrix> flats;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      RatMatrix m = RatMatrix::from_int_rows({a[i].normal(), a[j].normal()});
      RatMatrix key = rref(m);
      if (key.rows() != 2) continue;  // parallel normals cannot occur, but stay safe
      flats.emplace(matrix_key(key), std::move(key));
    }
  Int total = 0;
  for (const auto& [k, key] : flats) {
    Int members = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (in_row_space(key, a[i].normal())) ++members;
    total += members - 1;
  }
  return total;
}

Int b2_reduced(const Arrangement& a) {
  if (a.size() == 0) throw std::invalid_argument("b2_reduced needs a nonempty arrangement");
  const IntPolynomial pi = poincare_poly(a);
  const auto quotient = divide_exact(pi, IntPolynomial({Int(1), Int(1)}));
  if (!quotient)
    throw std::logic_error("poincare polynomial of a nonempty central arrangement not divisible by (1+t)");
  return quotient->coeff(2);
}

std::vector<B1B2Row> b1b2_check(const Arrangement& a) {
  const Int full = b2(a);
  std::vector<B1B2Row> rows;
  rows.reserve(a.size());
  for (std::size_t h = 0; h < a.size(); ++h) {
    const Restriction res = restriction(a, h);
    const Int restricted = b2(res.arr);
    const Int gap = Int(a.size()) - Int(res.arr.size());
    const Int slack = full - restricted - gap * Int(res.arr.size());
    rows.push_back(B1B2Row{static_cast<int>(h), full, restricted, res.arr.size(), slack, slack == 0});
  }
  return rows;
}

namespace {

void extend_flag(const IntersectionLattice& lat, std::vector<const Flat*>& chain, int depth,
                 std::vector<std::vector<const Flat*>>& out) {
  if (static_cast<int>(chain.size()) == depth) {
    out.push_back(chain);
    return;
  }
  const int next_codim = static_cast<int>(chain.size()) + 1;
  for (const auto& entry : lat.level(next_codim)) {
    if (!chain.empty() && !IntersectionLattice::below(entry.flat, *chain.back())) continue;
    chain.push_back(&entry.flat);
    extend_flag(lat, chain, depth, out);
    chain.pop_back();
  }
}

}  // namespace

std::vector<std::vector<const Flat*>> enumerate_flags(const Arrangement& a, int depth) {
  const auto& lat = lattice_of(a);
  std::vector<std::vector<const Flat*>> out;
  if (depth > lat.rank()) return out;
  std::vector<const Flat*> chain;
  extend_flag(lat, chain, depth, out);
  return out;
}

}  // namespace arrcert
