#include "arrcert/matrix.hpp"

#include <stdexcept>

namespace arrcert {

RatMatrix RatMatrix::from_rows(std::vector<std::vector<Rat>> rows) {
  if (rows.empty()) return RatMatrix(0, 0);
  RatMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = std::move(rows[r][c]);
  }
  return m;
}

RatMatrix RatMatrix::from_int_rows(const std::vector<std::vector<Int>>& rows) {
  if (rows.empty()) return RatMatrix(0, 0);
  RatMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = Rat(rows[r][c]);
  }
  return m;
}

std::vector<Rat> RatMatrix::row(std::size_t r) const {
  std::vector<Rat> out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = at(r, c);
  return out;
}

RatMatrix rref(const RatMatrix& m) {
  RatMatrix w = m;
  const std::size_t rows = w.rows(), cols = w.cols();
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t sel = pivot_row;
    while (sel < rows && w.at(sel, col) == 0) ++sel;
    if (sel == rows) continue;
    if (sel != pivot_row)
      for (std::size_t c = col; c < cols; ++c) std::swap(w.at(sel, c), w.at(pivot_row, c));
    const Rat inv = w.at(pivot_row, col);
    for (std::size_t c = col; c < cols; ++c) w.at(pivot_row, c) /= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || w.at(r, col) == 0) continue;
      const Rat factor = w.at(r, col);
      for (std::size_t c = col; c < cols; ++c) w.at(r, c) -= factor * w.at(pivot_row, c);
    }
    pivot_cols.push_back(col);
    ++pivot_row;
  }
  RatMatrix out(pivot_row, cols);
  for (std::size_t r = 0; r < pivot_row; ++r)
    for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = w.at(r, c);
  return out;
}

std::size_t rank(const RatMatrix& m) { return rref(m).rows(); }

std::vector<Rat> reduce_against_rref(const RatMatrix& rr, std::vector<Rat> v) {
  if (v.size() != rr.cols() && rr.rows() > 0)
    throw std::invalid_argument("vector length does not match matrix columns");
  for (std::size_t r = 0; r < rr.rows(); ++r) {
    std::size_t p = 0;
    while (p < rr.cols() && rr.at(r, p) == 0) ++p;
    if (p == rr.cols()) continue;
    if (v[p] == 0) continue;
    const Rat factor = v[p];
    for (std::size_t c = p; c < rr.cols(); ++c) v[c] -= factor * rr.at(r, c);
  }
  return v;
}

bool in_row_space(const RatMatrix& rr, const std::vector<Rat>& v) {
  auto res = reduce_against_rref(rr, v);
  for (const auto& x : res)
    if (x != 0) return false;
  return true;
}

bool in_row_space(const RatMatrix& rr, const std::vector<Int>& v) {
  std::vector<Rat> rv(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) rv[i] = Rat(v[i]);
  return in_row_space(rr, rv);
}

std::vector<std::vector<Int>> kernel_basis(const RatMatrix& m) {
  const RatMatrix rr = rref(m);
  const std::size_t cols = m.cols();
  std::vector<long> pivot_of_col(cols, -1);
  for (std::size_t r = 0; r < rr.rows(); ++r) {
    std::size_t p = 0;
    while (p < cols && rr.at(r, p) == 0) ++p;
    pivot_of_col[p] = static_cast<long>(r);
  }
  std::vector<std::vector<Int>> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (pivot_of_col[free_col] >= 0) continue;
    std::vector<Rat> v(cols);
    v[free_col] = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      if (pivot_of_col[c] >= 0)
        v[c] = -rr.at(static_cast<std::size_t>(pivot_of_col[c]), free_col);
    }
    basis.push_back(primitive_integer_vector(v));
  }
  return basis;
}

std::string matrix_key(const RatMatrix& m) {
  std::string key = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) key += ";";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) key += ",";
      key += to_string(m.at(r, c));
    }
  }
  return key;
}

}  // namespace arrcert
