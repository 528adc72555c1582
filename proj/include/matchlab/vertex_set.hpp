#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace matchlab {

/// Largest vertex count representable by the single-word vertex set.
inline constexpr int kMaxVertices = 64;

/// A subset of {0..63} stored as a bit mask. Members iterate in increasing
/// order, which is the canonical order used everywhere else.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
  VertexSet(std::initializer_list<int> members) {
    for (int v : members) bits_ |= bit(v);
  }

  static VertexSet from_members(std::span<const int> members) {
    VertexSet s;
    for (int v : members) s.bits_ |= bit(v);
    return s;
  }
  /// {0, .., count-1}
  static constexpr VertexSet prefix(int count) {
    return VertexSet(count >= 64 ? ~std::uint64_t{0}
                                 : (std::uint64_t{1} << count) - 1);
  }
  static constexpr VertexSet range(int lo, int hi) {
    return VertexSet(prefix(hi).bits_ & ~prefix(lo).bits_);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int v) const { return (bits_ >> v) & 1u; }
  constexpr bool contains(VertexSet s) const {
    return (bits_ & s.bits_) == s.bits_;
  }
  constexpr bool disjoint(VertexSet s) const { return (bits_ & s.bits_) == 0; }
  /// Largest member plus one; 0 for the empty set.
  constexpr int bound() const { return 64 - std::countl_zero(bits_); }
  constexpr int min() const { return std::countr_zero(bits_); }

  constexpr VertexSet& insert(int v) {
    bits_ |= bit(v);
    return *this;
  }
  constexpr VertexSet& erase(int v) {
    bits_ &= ~bit(v);
    return *this;
  }

  constexpr VertexSet operator|(VertexSet o) const {
    return VertexSet(bits_ | o.bits_);
  }
  constexpr VertexSet operator&(VertexSet o) const {
    return VertexSet(bits_ & o.bits_);
  }
  constexpr VertexSet operator^(VertexSet o) const {
    return VertexSet(bits_ ^ o.bits_);
  }
  /// Set difference.
  constexpr VertexSet operator-(VertexSet o) const {
    return VertexSet(bits_ & ~o.bits_);
  }
  constexpr VertexSet& operator|=(VertexSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr VertexSet& operator&=(VertexSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  constexpr VertexSet& operator-=(VertexSet o) {
    bits_ &= ~o.bits_;
    return *this;
  }
  constexpr bool operator==(const VertexSet&) const = default;

  class iterator {
   public:
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<int> members() const { return {begin(), end()}; }
  /// "{0,3,5}"
  std::string str() const;

 private:
  static constexpr std::uint64_t bit(int v) { return std::uint64_t{1} << v; }
  std::uint64_t bits_ = 0;
};

std::ostream& operator<<(std::ostream& out, VertexSet s);

/// Lexicographic order of the sorted member tuples of two sets of EQUAL size:
/// the smaller one holds the lowest element of the symmetric difference.
inline bool lex_less(VertexSet a, VertexSet b) {
  const std::uint64_t diff = a.bits() ^ b.bits();
  return (a.bits() & diff & (~diff + 1)) != 0;
}

/// Number of members of `s` lying in `side`.
inline int meet(VertexSet s, VertexSet side) { return (s & side).size(); }

/// An ordered bipartition (A, B) of {0..n-1}.
struct Partition {
  VertexSet a_side;
  VertexSet b_side;

  static Partition from_a(int n, VertexSet a) {
    return {a, VertexSet::prefix(n) - a};
  }
  int n() const { return a_side.size() + b_side.size(); }
  bool valid_for(int n) const {
    return a_side.disjoint(b_side) && (a_side | b_side) == VertexSet::prefix(n);
  }
  Partition swapped() const { return {b_side, a_side}; }
  bool operator==(const Partition&) const = default;
};

}  // namespace matchlab
