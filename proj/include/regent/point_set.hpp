#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "regent/error.hpp"

namespace regent {

/// A subset of a fixed finite point universe {0, ..., width-1}, packed into
/// one 64-bit word. All set algebra is exact; operands must share a width.
///
/// Universes are capped well below 64 points (see SizeCaps), so a single
/// word always suffices.
class PointSet {
 public:
  PointSet() = default;

  static PointSet empty_set(int width) { return PointSet(width, 0); }

  static PointSet full_set(int width) { return PointSet(width, mask_of(width)); }

  static PointSet singleton(int width, int i) {
    check_index(width, i);
    return PointSet(width, std::uint64_t{1} << i);
  }

  static PointSet of(int width, std::initializer_list<int> indices) {
    PointSet s = empty_set(width);
    for (int i : indices) s.add(i);
    return s;
  }

  static PointSet of(int width, const std::vector<int>& indices) {
    PointSet s = empty_set(width);
    for (int i : indices) s.add(i);
    return s;
  }

  static PointSet from_bits(int width, std::uint64_t bits) {
    if (width < 0 || width > 64) fail(ErrorKind::bad_index, "width out of range");
    if (bits & ~mask_of(width)) fail(ErrorKind::bad_index, "bits exceed universe width");
    return PointSet(width, bits);
  }

  int width() const { return width_; }
  std::uint64_t bits() const { return bits_; }

  bool contains(int i) const {
    check_index(width_, i);
    return (bits_ >> i) & 1u;
  }

  void add(int i) {
    check_index(width_, i);
    bits_ |= std::uint64_t{1} << i;
  }

  void remove(int i) {
    check_index(width_, i);
    bits_ &= ~(std::uint64_t{1} << i);
  }

  int count() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == mask_of(width_); }

  PointSet operator|(const PointSet& o) const { return PointSet(same_width(o), bits_ | o.bits_); }
  PointSet operator&(const PointSet& o) const { return PointSet(same_width(o), bits_ & o.bits_); }
  PointSet operator-(const PointSet& o) const { return PointSet(same_width(o), bits_ & ~o.bits_); }
  PointSet complement() const { return PointSet(width_, ~bits_ & mask_of(width_)); }

  bool subset_of(const PointSet& o) const { return (bits_ & ~PointSet(same_width(o), o.bits_).bits_) == 0; }
  bool intersects(const PointSet& o) const { return (bits_ & PointSet(same_width(o), o.bits_).bits_) != 0; }

  bool operator==(const PointSet& o) const { return width_ == o.width_ && bits_ == o.bits_; }
  bool operator!=(const PointSet& o) const { return !(*this == o); }

  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t b = bits_; b; b &= b - 1) fn(std::countr_zero(b));
  }

  /// Canonical ordering: lexicographic on the ascending index sequence,
  /// so {0,1} < {0,2} < {1}. Used for all sorted catalogues and documents.
  static bool lex_less(const PointSet& a, const PointSet& b) {
    std::uint64_t x = a.bits_, y = b.bits_;
    if (x == y) return a.width_ < b.width_;
    std::uint64_t diff = x ^ y;
    std::uint64_t low = diff & (~diff + 1);
    // Shared prefix below the lowest differing index. If a owns that index,
    // a's next element is smaller unless b has already run out.
    if (x & low) return (y & ~(low - 1)) != 0;
    return (x & ~(low - 1)) == 0;
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for_each([&](int i) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    });
    out += "}";
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const PointSet& s) { return os << s.to_string(); }

 private:
  PointSet(int width, std::uint64_t bits) : bits_(bits), width_(width) {}

  static std::uint64_t mask_of(int width) {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  }

  static void check_index(int width, int i) {
    if (i < 0 || i >= width) fail(ErrorKind::bad_index, "point index " + std::to_string(i) + " outside universe of size " + std::to_string(width));
  }

  int same_width(const PointSet& o) const {
    if (width_ != o.width_) fail(ErrorKind::width_mismatch, "point sets over different universes");
    return width_;
  }

  std::uint64_t bits_ = 0;
  int width_ = 0;
};

struct PointSetLexLess {
  bool operator()(const PointSet& a, const PointSet& b) const { return PointSet::lex_less(a, b); }
};

struct PointSetHash {
  std::size_t operator()(const PointSet& s) const {
    std::uint64_t h = s.bits() * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(s.width());
    h ^= h >> 32;
    return static_cast<std::size_t>(h);
  }
};

}  // namespace regent
