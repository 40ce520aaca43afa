#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace compmatch {

/// A set of indices below 64, stored as a bit mask.
///
/// Worker sets, hypergraph edges and row/column selections are all small at
/// the scales this library targets, so a single machine word is enough and
/// keeps subset enumeration cheap.
class IndexSet {
 public:
  static constexpr std::size_t kCapacity = 64;

  constexpr IndexSet() = default;

  static constexpr IndexSet from_bits(std::uint64_t bits) {
    IndexSet s;
    s.bits_ = bits;
    return s;
  }

  static IndexSet of(std::initializer_list<std::size_t> items) {
    IndexSet s;
    for (auto i : items) s.insert(i);
    return s;
  }

  /// {0, 1, ..., n-1}
  static IndexSet first(std::size_t n) {
    if (n > kCapacity) throw std::out_of_range("IndexSet::first: more than 64 elements");
    if (n == kCapacity) return from_bits(~std::uint64_t{0});
    return from_bits((std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

  constexpr bool contains(std::size_t i) const {
    return i < kCapacity && ((bits_ >> i) & 1U) != 0;
  }

  void insert(std::size_t i) {
    if (i >= kCapacity) throw std::out_of_range("IndexSet: index >= 64");
    bits_ |= std::uint64_t{1} << i;
  }

  void erase(std::size_t i) {
    if (i < kCapacity) bits_ &= ~(std::uint64_t{1} << i);
  }

  IndexSet with(std::size_t i) const {
    IndexSet s = *this;
    s.insert(i);
    return s;
  }

  constexpr bool is_subset_of(IndexSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool is_proper_subset_of(IndexSet other) const {
    return is_subset_of(other) && bits_ != other.bits_;
  }
  constexpr bool intersects(IndexSet other) const { return (bits_ & other.bits_) != 0; }

  /// Smallest element; undefined for the empty set.
  constexpr std::size_t min() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      f(static_cast<std::size_t>(std::countr_zero(b)));
    }
  }

  friend constexpr IndexSet operator|(IndexSet a, IndexSet b) { return from_bits(a.bits_ | b.bits_); }
  friend constexpr IndexSet operator&(IndexSet a, IndexSet b) { return from_bits(a.bits_ & b.bits_); }
  /// Set difference.
  friend constexpr IndexSet operator-(IndexSet a, IndexSet b) { return from_bits(a.bits_ & ~b.bits_); }
  IndexSet& operator|=(IndexSet o) { bits_ |= o.bits_; return *this; }
  IndexSet& operator&=(IndexSet o) { bits_ &= o.bits_; return *this; }

  friend constexpr bool operator==(IndexSet, IndexSet) = default;
  friend constexpr auto operator<=>(IndexSet, IndexSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Calls f on every subset of s, including the empty set and s itself.
template <class F>
void for_each_subset(IndexSet s, F&& f) {
  const std::uint64_t full = s.bits();
  std::uint64_t sub = full;
  while (true) {
    f(IndexSet::from_bits(sub));
    if (sub == 0) break;
    sub = (sub - 1) & full;
  }
}

using WorkerSet = IndexSet;

}  // namespace compmatch
