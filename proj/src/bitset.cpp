#include "arrcert/bitset.hpp"

#include <bit>

namespace arrcert {

std::size_t Bitset::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t Bitset::count_and(const Bitset& other) const {
  std::size_t n = 0;
  const std::size_t common = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < common; ++i)
    n += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  return n;
}

bool Bitset::subset_of(const Bitset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const std::uint64_t w = i < other.words_.size() ? other.words_[i] : 0;
    if (words_[i] & ~w) return false;
  }
  return true;
}

bool Bitset::intersects(const Bitset& other) const {
  const std::size_t common = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < common; ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

std::vector<int> Bitset::indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < size_; ++i)
    if (test(i)) out.push_back(static_cast<int>(i));
  return out;
}

std::string Bitset::str() const {
  std::string s;
  for (std::size_t i = 0; i < size_; ++i) s += test(i) ? '1' : '0';
  return s;
}

}  // namespace arrcert
