#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nertcam {

/// Fixed-width, value-semantic bit string.
///
/// Positions are string positions: bit 0 is the leftmost character of the
/// textual form. Storage is packed into 64-bit words with position `p` at
/// word `p / 64`, bit `p % 64`. Bits past `size()` in the last word are
/// always zero, so word-wise comparisons and popcounts need no masking.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t width);

  /// Parses a string of '0'/'1' characters. Throws std::invalid_argument on
  /// any other character.
  static BitVector from_string(std::string_view text);
  static BitVector ones(std::size_t width);
  static BitVector one_hot(std::size_t width, std::size_t position);

  std::size_t size() const noexcept { return width_; }
  bool empty() const noexcept { return width_ == 0; }

  bool test(std::size_t pos) const;
  void set(std::size_t pos, bool value = true);
  void reset(std::size_t pos) { set(pos, false); }
  void fill(bool value);

  std::size_t count() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }

  /// True iff some position is set in both vectors (equal widths required).
  bool intersects(const BitVector& other) const;

  /// Ascending list of set positions.
  std::vector<std::size_t> set_positions() const;

  BitVector slice(std::size_t offset, std::size_t width) const;
  /// Overwrites positions [offset, offset + src.size()) with src.
  void assign(std::size_t offset, const BitVector& src);

  BitVector& operator&=(const BitVector& rhs);
  BitVector& operator|=(const BitVector& rhs);
  BitVector& operator^=(const BitVector& rhs);
  BitVector operator~() const;

  friend BitVector operator&(BitVector lhs, const BitVector& rhs) { return lhs &= rhs; }
  friend BitVector operator|(BitVector lhs, const BitVector& rhs) { return lhs |= rhs; }
  friend BitVector operator^(BitVector lhs, const BitVector& rhs) { return lhs ^= rhs; }
  friend bool operator==(const BitVector&, const BitVector&) = default;

  std::string to_string() const;

  std::span<const Word> words() const noexcept { return words_; }

 private:
  void require_same_width(const BitVector& other) const;
  void clear_tail() noexcept;

  std::size_t width_ = 0;
  std::vector<Word> words_;
};

/// Concatenation in order: `a` occupies the leftmost positions.
BitVector concat(const BitVector& a, const BitVector& b);

}  // namespace nertcam
