#pragma once

#include <vector>

#include "arrcert/arrangement.hpp"
#include "arrcert/polynomial.hpp"

namespace arrcert {

/// Intersection lattice of an arrangement, graded by codimension, with the
/// Moebius function attached to every flat. Flats within a level are ordered
/// by their canonical keys, so the whole structure is deterministic.
class IntersectionLattice {
 public:
  struct Entry {
    Flat flat;
    Int moebius;
  };

  explicit IntersectionLattice(const Arrangement& a);

  int rank() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<Entry>& level(int codim) const { return levels_[static_cast<std::size_t>(codim)]; }
  const std::vector<std::vector<Entry>>& levels() const { return levels_; }

  std::size_t flat_count() const;

  /// X <= Y in the lattice order (Y contains X as a subspace).
  static bool below(const Flat& x, const Flat& y) { return y.contained.subset_of(x.contained); }

 private:
  std::vector<std::vector<Entry>> levels_;
};

/// Builds (or returns the cached) intersection lattice of an arrangement.
const IntersectionLattice& lattice_of(const Arrangement& a);

/// Characteristic polynomial: sum of mu(X) t^{dim X}, monic of degree dim(A).
IntPolynomial char_poly(const Arrangement& a);

/// Poincare polynomial: sum of mu(X) (-t)^{codim X}; degree rank(A), all
/// coefficients positive.
IntPolynomial poincare_poly(const Arrangement& a);

/// Betti numbers b_0..b_rank: the coefficients of the Poincare polynomial.
std::vector<Int> betti_numbers(const Arrangement& a);

/// Second Betti number computed from the codimension-2 flats:
/// sum over X in L_2(A) of (|A_X| - 1). Agrees with the t^2 coefficient of
/// the Poincare polynomial.
Int b2(const Arrangement& a);

/// t^2 coefficient of poincare(A)/(1+t). The division must be exact for a
/// nonempty central arrangement; throws std::logic_error otherwise and
/// std::invalid_argument for the empty arrangement.
Int b2_reduced(const Arrangement& a);

struct B1B2Row {
  int h;
  Int b2_full;         // b2(A)
  Int b2_restriction;  // b2(A^H)
  std::size_t restriction_size;
  Int slack;           // b2(A) - b2(A^H) - (|A|-|A^H|)|A^H|, always >= 0
  bool equality;       // slack == 0: a division candidate
};

/// Per-hyperplane report of the second-Betti-number inequality.
std::vector<B1B2Row> b1b2_check(const Arrangement& a);

/// All chains X_1 > X_2 > ... > X_depth with X_i in L_i(A), as indices into
/// the lattice levels. Exhaustive; intended for small-rank property tests.
std::vector<std::vector<const Flat*>> enumerate_flags(const Arrangement& a, int depth);

}  // namespace arrcert
