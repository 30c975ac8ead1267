#include "bredon/gf2.hpp"

#include <bit>
#include <unordered_map>

namespace bredon::gf2 {

bool BitVector::any() const {
  for (auto w : words_)
    if (w) return true;
  return false;
}

std::size_t BitVector::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t BitVector::highest() const {
  for (std::size_t i = words_.size(); i-- > 0;)
    if (words_[i]) return i * 64 + 63 - static_cast<std::size_t>(std::countl_zero(words_[i]));
  return npos;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVector BitVector::concat(const BitVector& other) const {
  BitVector out(size_ + other.size_);
  for (std::size_t i = 0; i < size_; ++i)
    if (test(i)) out.set(i);
  for (std::size_t i = 0; i < other.size_; ++i)
    if (other.test(i)) out.set(size_ + i);
  return out;
}

std::size_t rank(std::vector<BitVector> columns) {
  std::unordered_map<std::size_t, std::size_t> pivot;  // highest row -> column
  std::size_t r = 0;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    auto& col = columns[j];
    for (auto low = col.highest(); low != BitVector::npos; low = col.highest()) {
      auto it = pivot.find(low);
      if (it == pivot.end()) {
        pivot.emplace(low, j);
        ++r;
        break;
      }
      col ^= columns[it->second];
    }
  }
  return r;
}

std::vector<BitVector> kernel_basis(const std::vector<BitVector>& columns) {
  const std::size_t n = columns.size();
  std::vector<BitVector> work = columns;
  std::vector<BitVector> combo;
  combo.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    combo.emplace_back(n);
    combo.back().set(j);
  }
  std::unordered_map<std::size_t, std::size_t> pivot;
  std::vector<BitVector> kernel;
  for (std::size_t j = 0; j < n; ++j) {
    bool zero = true;
    for (auto low = work[j].highest(); low != BitVector::npos; low = work[j].highest()) {
      auto it = pivot.find(low);
      if (it == pivot.end()) {
        pivot.emplace(low, j);
        zero = false;
        break;
      }
      work[j] ^= work[it->second];
      combo[j] ^= combo[it->second];
    }
    if (zero) kernel.push_back(combo[j]);
  }
  return kernel;
}

}  // namespace bredon::gf2
