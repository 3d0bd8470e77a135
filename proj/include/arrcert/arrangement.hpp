#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arrcert/bitset.hpp"
#include "arrcert/matrix.hpp"
#include "arrcert/numbers.hpp"

namespace arrcert {

class IntersectionLattice;

enum class ParseErrorKind {
  BadHeader,
  MalformedLine,
  ZeroVector,
  WrongDimension,
  DuplicateHyperplane,
  BadMultiplicity,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        kind_(kind),
        line_(line) {}

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

/// Linear hyperplane through the origin, stored as its canonically scaled
/// normal vector: primitive integers, first nonzero entry positive.
class Hyperplane {
 public:
  explicit Hyperplane(std::vector<Int> normal);
  explicit Hyperplane(std::vector<Rat> normal);

  const std::vector<Int>& normal() const { return normal_; }
  std::size_t dim() const { return normal_.size(); }
  std::string key() const;

  bool operator==(const Hyperplane& other) const = default;
  bool operator<(const Hyperplane& other) const { return normal_ < other.normal_; }

 private:
  std::vector<Int> normal_;
};

namespace detail {
struct LatticeBox;
}

/// Central arrangement of hyperplanes in Q^dim. Hyperplanes are kept sorted
/// by normal vector, so indices are canonical. Immutable after construction.
class Arrangement {
 public:
  explicit Arrangement(int dim, std::vector<Hyperplane> hyperplanes = {});

  int dim() const { return dim_; }
  std::size_t size() const { return hyperplanes_.size(); }
  const Hyperplane& operator[](std::size_t i) const { return hyperplanes_[i]; }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }

  /// Rank of the normal matrix (computed once, then cached).
  int rank() const;
  bool essential() const { return rank() == dim_; }

  /// Canonical serialization: equal arrangements share a key. Parseable via
  /// arrangement_from_key.
  const std::string& key() const { return key_; }

  std::optional<std::size_t> index_of(const Hyperplane& h) const;

  bool operator==(const Arrangement& other) const { return key_ == other.key_; }

  detail::LatticeBox& box() const { return *box_; }

 private:
  int dim_;
  std::vector<Hyperplane> hyperplanes_;
  std::string key_;
  std::shared_ptr<detail::LatticeBox> box_;
};

/// Flat of the intersection lattice: a subspace given by the canonical rref
/// of its spanning normals, together with the set of hyperplanes containing
/// it. For flats of L(A) the subspace is exactly the intersection of the
/// hyperplanes in `contained`.
struct Flat {
  RatMatrix key;        // rref of spanning normals; codim rows
  Bitset contained;     // indices of hyperplanes containing the flat
  int codim = 0;
  std::string key_str;  // matrix_key(key)
};

enum class WeylFamily { A, B, D };

/// Parses the .arr format: a "dim l" header line, then one hyperplane per
/// line as l whitespace-separated integers or rationals "p/q". '#' starts a
/// comment; blank lines are ignored.
Arrangement parse_arrangement(const std::string& text);
std::string to_arr_text(const Arrangement& a);

/// Reconstructs an arrangement from its canonical key.
Arrangement arrangement_from_key(const std::string& key);

/// Weyl arrangements: A -> {x_i - x_j}, B -> {x_i} + {x_i +- x_j},
/// D -> {x_i +- x_j}, all in dimension l >= 2.
Arrangement weyl(WeylFamily family, int l);
WeylFamily weyl_family_from_string(const std::string& name);

/// Seeded random arrangement with small integer normals; entries in [-3, 3].
Arrangement random_arrangement(int dim, int count, std::uint64_t seed);

Arrangement delete_hyperplane(const Arrangement& a, std::size_t h);

/// Flat spanned by the given hyperplanes (always a member of L(A)).
Flat flat_of(const Arrangement& a, const std::vector<int>& hyperplane_indices);
/// The ambient space V as the codimension-0 flat.
Flat ambient_flat(const Arrangement& a);
/// Validates that the subspace cut out by `normals` is a flat of L(A) and
/// returns it; throws std::invalid_argument otherwise.
Flat flat_from_normals(const Arrangement& a, const std::vector<std::vector<Int>>& normals);

/// Sub-arrangement of the hyperplanes containing X, in the same ambient space.
Arrangement localization(const Arrangement& a, const Flat& x);

/// Restriction of A onto a flat, with the trace map recording which
/// hyperplanes collapse onto each induced hyperplane.
struct Restriction {
  Arrangement arr;                      // induced arrangement, dim = dim X
  RatMatrix basis;                      // columns: integer basis of X in V
  std::vector<std::vector<int>> fibers; // per induced hyperplane: parent indices
  std::vector<int> parent_to_induced;   // -1 for members of A_X
};

Restriction restriction(const Arrangement& a, const Flat& x);
/// Restriction onto the h-th hyperplane.
Restriction restriction(const Arrangement& a, std::size_t h);

/// Coordinates of A on the span of its normals; identity when A is essential.
struct Essentialization {
  Arrangement arr;     // essential arrangement in dimension rank(A)
  RatMatrix row_basis; // rref of the normals of A; rows span the quotient
  int zeros;           // dim(A) - rank(A)
};

Essentialization essentialize(const Arrangement& a);

}  // namespace arrcert
