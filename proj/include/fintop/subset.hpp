#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace fintop {

/// Hard capacity of a point set. Every space, relation and coordinate set
/// in the library lives inside this many points.
inline constexpr int kSubsetCapacity = 128;

/// A set of points {0..kSubsetCapacity-1} stored as a 128-bit mask.
/// Bit i is point i; the numeric value is used for canonical ordering.
class Subset {
public:
  using Word = unsigned __int128;

  constexpr Subset() = default;
  constexpr explicit Subset(Word bits) : bits_(bits) {}
  Subset(std::initializer_list<int> points) {
    for (int p : points) insert(p);
  }

  static Subset from_points(const std::vector<int>& points) {
    Subset s;
    for (int p : points) s.insert(p);
    return s;
  }
  /// {0..n-1}
  static constexpr Subset full(int n) {
    if (n >= kSubsetCapacity) return Subset(~Word{0});
    return Subset((Word{1} << n) - 1);
  }
  static constexpr Subset singleton(int p) { return Subset(Word{1} << p); }

  constexpr Word bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int p) const { return ((bits_ >> p) & 1) != 0; }
  constexpr bool contains(Subset other) const { return (other.bits_ & ~bits_) == 0; }
  constexpr bool intersects(Subset other) const { return (bits_ & other.bits_) != 0; }
  constexpr void insert(int p) { bits_ |= Word{1} << p; }
  constexpr void erase(int p) { bits_ &= ~(Word{1} << p); }

  int size() const {
    return std::popcount(static_cast<std::uint64_t>(bits_)) +
           std::popcount(static_cast<std::uint64_t>(bits_ >> 64));
  }
  /// Least element; -1 when empty.
  int lowest() const {
    const auto lo = static_cast<std::uint64_t>(bits_);
    if (lo != 0) return std::countr_zero(lo);
    const auto hi = static_cast<std::uint64_t>(bits_ >> 64);
    if (hi != 0) return 64 + std::countr_zero(hi);
    return -1;
  }
  std::vector<int> points() const {
    std::vector<int> out;
    for (Word b = bits_; b != 0; b &= b - 1) {
      out.push_back(Subset(b).lowest());
    }
    return out;
  }

  /// Calls fn(p) for every element in ascending order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (Word b = bits_; b != 0; b &= b - 1) fn(Subset(b).lowest());
  }

  /// Complement relative to {0..n-1}.
  constexpr Subset complement(int n) const { return Subset(~bits_ & full(n).bits_); }

  constexpr Subset operator|(Subset o) const { return Subset(bits_ | o.bits_); }
  constexpr Subset operator&(Subset o) const { return Subset(bits_ & o.bits_); }
  constexpr Subset operator-(Subset o) const { return Subset(bits_ & ~o.bits_); }
  constexpr Subset& operator|=(Subset o) { bits_ |= o.bits_; return *this; }
  constexpr Subset& operator&=(Subset o) { bits_ &= o.bits_; return *this; }
  constexpr Subset& operator-=(Subset o) { bits_ &= ~o.bits_; return *this; }

  constexpr bool operator==(const Subset&) const = default;
  constexpr auto operator<=>(const Subset& o) const { return bits_ <=> o.bits_; }

  /// "[0,2,5]"
  std::string to_string() const;

private:
  Word bits_ = 0;
};

/// Orders subsets by cardinality, then numeric value. Quantifiers that search
/// for counterexamples visit subsets in this order so witnesses are minimal.
struct BySizeThenValue {
  bool operator()(Subset a, Subset b) const {
    const int sa = a.size();
    const int sb = b.size();
    return sa != sb ? sa < sb : a < b;
  }
};

/// All subsets of `universe` (including empty and universe) in size-then-value order.
std::vector<Subset> subsets_of(Subset universe);

struct SubsetHash {
  std::size_t operator()(Subset s) const noexcept {
    const auto lo = static_cast<std::uint64_t>(s.bits());
    const auto hi = static_cast<std::uint64_t>(s.bits() >> 64);
    return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
  }
};

}  // namespace fintop
