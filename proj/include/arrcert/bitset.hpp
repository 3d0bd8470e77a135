#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace arrcert {

/// Fixed-universe bitset sized at construction; used for hyperplane index
/// sets, where subset tests drive the lattice order relation.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64) {}

  std::size_t size() const { return size_; }

  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  std::size_t count() const;
  std::size_t count_and(const Bitset& other) const;

  bool subset_of(const Bitset& other) const;
  bool intersects(const Bitset& other) const;

  bool operator==(const Bitset& other) const = default;

  std::vector<int> indices() const;
  std::string str() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace arrcert
