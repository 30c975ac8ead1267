#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Dense linear algebra over the two-element field. Used as the direct-rank
// oracle layer (Betti numbers, Mayer-Vietoris maps, module ranks); the
// persistence reduction keeps its own sparse columns.
namespace bredon::gf2 {

class BitVector {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  bool any() const;
  std::size_t count() const;
  /// Index of the highest set bit, or npos.
  std::size_t highest() const;

  BitVector& operator^=(const BitVector& other);
  bool operator==(const BitVector& other) const = default;

  /// Concatenation [this | other].
  BitVector concat(const BitVector& other) const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Rank of the matrix whose columns are given.
std::size_t rank(std::vector<BitVector> columns);

/// A basis of the null space, as coefficient vectors over the input columns.
std::vector<BitVector> kernel_basis(const std::vector<BitVector>& columns);

}  // namespace bredon::gf2
