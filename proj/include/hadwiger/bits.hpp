#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace hadwiger {

/// Vertex subset of a graph with at most 64 vertices, bit i = vertex i.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaskBits = 64;

constexpr Mask bit(std::size_t i) noexcept { return Mask{1} << i; }

constexpr Mask full_mask(std::size_t n) noexcept {
  return n >= kMaskBits ? ~Mask{0} : (Mask{1} << n) - 1;
}

constexpr int popcount(Mask m) noexcept { return std::popcount(m); }

constexpr int lowest_bit(Mask m) noexcept { return std::countr_zero(m); }

template <class F>
constexpr void for_each_bit(Mask m, F&& f) {
  while (m != 0) {
    f(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
}

inline std::vector<std::size_t> bits_of(Mask m) {
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(popcount(m)));
  for_each_bit(m, [&](std::size_t v) { out.push_back(v); });
  return out;
}

/// Fixed-size bitset with a runtime length; used for relations over
/// thousands of vertex sets (touching graphs, hit tables).
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const noexcept { return n_; }

  void set(std::size_t i) noexcept { words_[i >> 6] |= Mask{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(Mask{1} << (i & 63)); }
  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }

  bool none() const noexcept {
    for (Mask w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (Mask w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  DynBitset& operator&=(const DynBitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// this &= ~o
  DynBitset& subtract(const DynBitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  std::size_t intersection_count(const DynBitset& o) const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    }
    return c;
  }

  bool is_subset_of(const DynBitset& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    }
    return true;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Mask m = words_[w];
      while (m != 0) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
      }
    }
  }

  bool operator==(const DynBitset&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Mask> words_;
};

}  // namespace hadwiger
