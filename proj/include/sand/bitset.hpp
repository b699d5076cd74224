#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sand/kernels.hpp"

namespace sand {

// Fixed-length bitset with word storage exposed for the SIMD kernels.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }
  std::size_t word_count() const { return words_.size(); }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool none() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  // Bits set in *this and not in other.
  std::size_t count_andnot(const Bitset& other) const {
    return static_cast<std::size_t>(
        kernels::active().andnot_count(words_.data(), other.words_.data(), words_.size()));
  }
  std::size_t count_and(const Bitset& other) const {
    return static_cast<std::size_t>(
        kernels::active().and_count(words_.data(), other.words_.data(), words_.size()));
  }
  bool is_subset_of(const Bitset& other) const {
    return kernels::active().is_subset(words_.data(), other.words_.data(), words_.size());
  }
  Bitset& operator|=(const Bitset& other) {
    kernels::active().or_into(words_.data(), other.words_.data(), words_.size());
    return *this;
  }

  // Calls fn(index) for each set bit in increasing order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        fn(w * 64 + static_cast<std::size_t>(bit));
        word &= word - 1;
      }
    }
  }

  std::vector<std::uint32_t> indices() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
    return out;
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace sand
