#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>

namespace ufg {

inline constexpr int kMaxItems = 16;

// Square boolean matrix over at most kMaxItems items.
//
// Row a occupies a 16-bit lane of words_[a / 4] (row 0 in the top lane) and
// column b is bit (15 - b) of its lane. With that layout the unsigned order
// of the four words is exactly the lexicographic order of the row-major
// flattening, which is the canonical poset order used throughout.
class BitMatrix {
 public:
  using Row = std::uint16_t;

  constexpr BitMatrix() = default;

  static constexpr Row column_bit(int b) {
    return static_cast<Row>(0x8000u >> b);
  }
  static constexpr Row row_mask(int m) {
    return m == 0 ? Row{0} : static_cast<Row>(0xFFFFu << (16 - m));
  }

  constexpr Row row(int a) const {
    return static_cast<Row>(words_[a >> 2] >> shift(a));
  }
  constexpr void set_row(int a, Row r) {
    std::uint64_t& w = words_[a >> 2];
    w = (w & ~(std::uint64_t{0xFFFF} << shift(a))) |
        (std::uint64_t{r} << shift(a));
  }

  constexpr bool test(int a, int b) const {
    return (row(a) & column_bit(b)) != 0;
  }
  constexpr void set(int a, int b) {
    words_[a >> 2] |= std::uint64_t{column_bit(b)} << shift(a);
  }
  constexpr void reset(int a, int b) {
    words_[a >> 2] &= ~(std::uint64_t{column_bit(b)} << shift(a));
  }
  constexpr void assign(int a, int b, bool value) {
    if (value) {
      set(a, b);
    } else {
      reset(a, b);
    }
  }

  constexpr bool is_subset_of(const BitMatrix& other) const {
    return ((words_[0] & ~other.words_[0]) | (words_[1] & ~other.words_[1]) |
            (words_[2] & ~other.words_[2]) |
            (words_[3] & ~other.words_[3])) == 0;
  }
  constexpr bool intersects(const BitMatrix& other) const {
    return ((words_[0] & other.words_[0]) | (words_[1] & other.words_[1]) |
            (words_[2] & other.words_[2]) | (words_[3] & other.words_[3])) !=
           0;
  }
  constexpr bool none() const {
    return (words_[0] | words_[1] | words_[2] | words_[3]) == 0;
  }
  constexpr int count() const {
    return std::popcount(words_[0]) + std::popcount(words_[1]) +
           std::popcount(words_[2]) + std::popcount(words_[3]);
  }

  constexpr BitMatrix& operator&=(const BitMatrix& o) {
    for (int i = 0; i < 4; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  constexpr BitMatrix& operator|=(const BitMatrix& o) {
    for (int i = 0; i < 4; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  // Set difference.
  constexpr BitMatrix& operator-=(const BitMatrix& o) {
    for (int i = 0; i < 4; ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend constexpr BitMatrix operator&(BitMatrix a, const BitMatrix& b) {
    return a &= b;
  }
  friend constexpr BitMatrix operator|(BitMatrix a, const BitMatrix& b) {
    return a |= b;
  }
  friend constexpr BitMatrix operator-(BitMatrix a, const BitMatrix& b) {
    return a -= b;
  }

  static constexpr BitMatrix diagonal(int m) {
    BitMatrix d;
    for (int i = 0; i < m; ++i) d.set(i, i);
    return d;
  }
  static constexpr BitMatrix full(int m) {
    BitMatrix f;
    for (int i = 0; i < m; ++i) f.set_row(i, row_mask(m));
    return f;
  }
  static constexpr BitMatrix off_diagonal(int m) {
    return full(m) - diagonal(m);
  }

  // Transposed copy (entry (a,b) becomes (b,a)).
  constexpr BitMatrix transposed(int m) const {
    BitMatrix t;
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        if (test(a, b)) t.set(b, a);
      }
    }
    return t;
  }

  std::size_t hash() const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (std::uint64_t w : words_) {
      h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  constexpr const std::array<std::uint64_t, 4>& words() const {
    return words_;
  }

  friend constexpr auto operator<=>(const BitMatrix&,
                                    const BitMatrix&) = default;

 private:
  static constexpr int shift(int a) { return 48 - 16 * (a & 3); }

  std::array<std::uint64_t, 4> words_{};
};

namespace bits {

// Reflexive-transitive closure in place (Warshall over rows).
constexpr void close_transitively(BitMatrix& r, int m) {
  for (int k = 0; k < m; ++k) {
    const BitMatrix::Row via = r.row(k);
    const BitMatrix::Row kbit = BitMatrix::column_bit(k);
    for (int i = 0; i < m; ++i) {
      const BitMatrix::Row ri = r.row(i);
      if ((ri & kbit) != 0) r.set_row(i, static_cast<BitMatrix::Row>(ri | via));
    }
  }
}

// True when some a != b has both (a,b) and (b,a).
constexpr bool has_two_cycle(const BitMatrix& r, int m) {
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if (r.test(a, b) && r.test(b, a)) return true;
    }
  }
  return false;
}

// Adds (a,b) to the poset q and restores transitivity. Returns false and
// leaves q untouched when (b,a) is already present (the result would be
// cyclic). q must be reflexive and transitive.
constexpr bool add_pair_closed(BitMatrix& q, int m, int a, int b) {
  if (q.test(a, b)) return true;
  if (q.test(b, a)) return false;
  const BitMatrix::Row above_b = q.row(b);
  const BitMatrix::Row abit = BitMatrix::column_bit(a);
  for (int x = 0; x < m; ++x) {
    const BitMatrix::Row rx = q.row(x);
    if ((rx & abit) != 0) q.set_row(x, static_cast<BitMatrix::Row>(rx | above_b));
  }
  return true;
}

}  // namespace bits

}  // namespace ufg
