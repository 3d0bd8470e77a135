#pragma once

#include <utility>
#include <vector>

#include "arrcert/arrangement.hpp"

namespace arrcert {

/// Arrangement with a positive integer multiplicity per hyperplane.
/// Multiplicities are aligned with the canonical hyperplane order of the
/// underlying arrangement.
class Multiarrangement {
 public:
  Multiarrangement(Arrangement base, std::vector<Int> multiplicities);

  const Arrangement& base() const { return base_; }
  const std::vector<Int>& multiplicities() const { return mult_; }
  const Int& multiplicity(std::size_t h) const { return mult_[h]; }

  /// |m| = sum of the multiplicities.
  Int total_multiplicity() const;

  std::string key() const;

 private:
  Arrangement base_;
  std::vector<Int> mult_;
};

/// Parses the .marr format: the .arr format with one extra trailing positive
/// integer multiplicity per hyperplane line.
Multiarrangement parse_multiarrangement(const std::string& text);
std::string to_marr_text(const Multiarrangement& m);

/// Ziegler restriction of A onto its h-th hyperplane: the restriction with
/// each induced hyperplane weighted by its trace-fiber size, so the total
/// multiplicity is |A| - 1.
Multiarrangement ziegler_restriction(const Arrangement& a, std::size_t h);

struct ExponentPair {
  Int d1, d2;  // d1 <= d2, d1 + d2 = |m|
  bool operator==(const ExponentPair&) const = default;
};

/// Exponents of a multiarrangement of rank at most 2, computed by searching
/// for the minimal degree of a nonzero logarithmic derivation with exact
/// rational linear algebra. Rank 0 gives (0,0), rank 1 gives (0,|m|).
/// Throws std::invalid_argument when the base has rank greater than 2.
ExponentPair rank2_exponents(const Multiarrangement& m);

/// Second Betti number of a multiarrangement as the local-global sum over
/// the codimension-2 flats of the base: sum of d1(X) * d2(X), where the pair
/// is the exponents of the localized rank-2 multiarrangement at X.
Int multi_b2(const Multiarrangement& m);

/// Adjusts the multiplicity of the h-th hyperplane by +-1. Lowering a
/// multiplicity-1 hyperplane removes it from the support.
Multiarrangement perturb(const Multiarrangement& m, std::size_t h, int sign);

/// b2(A,m) - b2(A,m - delta_h); requires m(h) >= 2.
Int b2_drop(const Multiarrangement& m, std::size_t h);

}  // namespace arrcert
