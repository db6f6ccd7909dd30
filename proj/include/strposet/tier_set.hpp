#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace strposet {

/// Hard storage limit for one tier of a fragment. Runtime caps (default 64)
/// are enforced by validation, not by the container.
inline constexpr std::size_t kMaxTierCapacity = 512;
inline constexpr std::size_t kDefaultTierCap = 64;

/// Fixed-width bitmask over the indices of one tier (H1 or H2).
class TierSet {
 public:
  static constexpr std::size_t kWords = kMaxTierCapacity / 64;

  constexpr TierSet() = default;
  TierSet(std::initializer_list<std::size_t> items) {
    for (auto i : items) insert(i);
  }

  static TierSet from_indices(const std::vector<std::size_t>& items) {
    TierSet s;
    for (auto i : items) s.insert(i);
    return s;
  }

  /// The set {0, ..., n-1}.
  static TierSet prefix(std::size_t n) {
    TierSet s;
    for (std::size_t w = 0; w < kWords && n > 0; ++w) {
      if (n >= 64) {
        s.words_[w] = ~std::uint64_t{0};
        n -= 64;
      } else {
        s.words_[w] = (std::uint64_t{1} << n) - 1;
        n = 0;
      }
    }
    return s;
  }

  static TierSet singleton(std::size_t i) {
    TierSet s;
    s.insert(i);
    return s;
  }

  void insert(std::size_t i) { words_[i >> 6] |= bit(i); }
  void erase(std::size_t i) { words_[i >> 6] &= ~bit(i); }
  bool contains(std::size_t i) const {
    return i < kMaxTierCapacity && (words_[i >> 6] & bit(i)) != 0;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  bool is_subset_of(const TierSet& other) const {
    for (std::size_t w = 0; w < kWords; ++w)
      if ((words_[w] & ~other.words_[w]) != 0) return false;
    return true;
  }
  bool is_proper_subset_of(const TierSet& other) const {
    return is_subset_of(other) && *this != other;
  }
  bool intersects(const TierSet& other) const {
    for (std::size_t w = 0; w < kWords; ++w)
      if ((words_[w] & other.words_[w]) != 0) return true;
    return false;
  }

  TierSet& operator&=(const TierSet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  TierSet& operator|=(const TierSet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  /// Set difference.
  TierSet& operator-=(const TierSet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  friend TierSet operator&(TierSet a, const TierSet& b) { return a &= b; }
  friend TierSet operator|(TierSet a, const TierSet& b) { return a |= b; }
  friend TierSet operator-(TierSet a, const TierSet& b) { return a -= b; }

  friend bool operator==(const TierSet&, const TierSet&) = default;
  /// Lexicographic on the word array; only used for deterministic ordering.
  friend auto operator<=>(const TierSet& a, const TierSet& b) {
    for (std::size_t w = kWords; w-- > 0;) {
      if (a.words_[w] != b.words_[w]) return a.words_[w] <=> b.words_[w];
    }
    return std::strong_ordering::equal;
  }

  /// Smallest element, or kMaxTierCapacity when empty.
  std::size_t first() const { return next(0); }
  /// Smallest element >= from, or kMaxTierCapacity.
  std::size_t next(std::size_t from) const {
    if (from >= kMaxTierCapacity) return kMaxTierCapacity;
    std::size_t w = from >> 6;
    std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (cur != 0) return (w << 6) + static_cast<std::size_t>(std::countr_zero(cur));
      if (++w == kWords) return kMaxTierCapacity;
      cur = words_[w];
    }
  }

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = std::size_t;
    using difference_type = std::ptrdiff_t;
    using pointer = const std::size_t*;
    using reference = std::size_t;

    iterator() = default;
    iterator(const TierSet* set, std::size_t pos) : set_(set), pos_(pos) {}
    std::size_t operator*() const { return pos_; }
    iterator& operator++() {
      pos_ = set_->next(pos_ + 1);
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.pos_ == b.pos_; }

   private:
    const TierSet* set_ = nullptr;
    std::size_t pos_ = kMaxTierCapacity;
  };

  iterator begin() const { return {this, first()}; }
  iterator end() const { return {this, kMaxTierCapacity}; }

  std::vector<std::size_t> to_vector() const {
    std::vector<std::size_t> out;
    for (auto i : *this) out.push_back(i);
    return out;
  }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto w : words_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ULL;
    return h;
  }

 private:
  static constexpr std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << (i & 63); }

  std::array<std::uint64_t, kWords> words_{};
};

/// Calls fn(subset) for every subset of `items` with 1 <= |subset| <= max_size,
/// in increasing bitmask order over the positions of `items`. |items| <= 30.
template <typename Fn>
void for_each_subset(const std::vector<std::size_t>& items, std::size_t max_size, Fn&& fn) {
  const std::size_t n = items.size();
  const std::uint32_t limit = std::uint32_t{1} << n;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > max_size) continue;
    TierSet s;
    for (std::uint32_t m = mask; m != 0; m &= m - 1) s.insert(items[std::countr_zero(m)]);
    fn(s);
  }
}

/// Calls fn(subset) for every k-subset of `items` in lexicographic order of
/// positions. Stops early when fn returns false.
template <typename Fn>
bool for_each_combination(const std::vector<std::size_t>& items, std::size_t k, Fn&& fn) {
  const std::size_t n = items.size();
  if (k > n) return true;
  std::vector<std::size_t> pos(k);
  for (std::size_t i = 0; i < k; ++i) pos[i] = i;
  while (true) {
    TierSet s;
    for (auto p : pos) s.insert(items[p]);
    if (!fn(s)) return false;
    std::size_t i = k;
    while (i > 0 && pos[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++pos[i - 1];
    for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
  }
}

}  // namespace strposet

template <>
struct std::hash<strposet::TierSet> {
  std::size_t operator()(const strposet::TierSet& s) const noexcept { return s.hash(); }
};
