#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "arrcert/numbers.hpp"

namespace arrcert {

/// Dense matrix over the rationals. Values are immutable in spirit: the
/// library builds a matrix once and then only reads it.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static RatMatrix from_rows(std::vector<std::vector<Rat>> rows);
  static RatMatrix from_int_rows(const std::vector<std::vector<Int>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rat& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::vector<Rat> row(std::size_t r) const;

  bool operator==(const RatMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> entries_;
};

/// Canonical reduced row-echelon form with zero rows dropped: pivot columns
/// strictly increasing, pivots equal to 1, pivot columns zero elsewhere.
/// Two matrices with the same row space produce identical output, which makes
/// the result usable as a canonical key for subspaces.
RatMatrix rref(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// Reduces v against a matrix already in rref form and returns the residual.
/// The residual is zero exactly when v lies in the row space.
std::vector<Rat> reduce_against_rref(const RatMatrix& rr, std::vector<Rat> v);

bool in_row_space(const RatMatrix& rr, const std::vector<Rat>& v);
bool in_row_space(const RatMatrix& rr, const std::vector<Int>& v);

/// Basis of the right kernel {x : m x = 0}, one primitive integer vector per
/// free column of rref(m), in column order. Empty when the kernel is trivial.
std::vector<std::vector<Int>> kernel_basis(const RatMatrix& m);

/// Serialized form of a matrix, used as an exact dictionary key.
std::string matrix_key(const RatMatrix& m);

}  // namespace arrcert
