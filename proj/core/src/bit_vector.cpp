#include "nertcam/bit_vector.hpp"

#include <bit>
#include <stdexcept>

namespace nertcam {

namespace {

std::size_t word_count(std::size_t width) {
  return (width + BitVector::kWordBits - 1) / BitVector::kWordBits;
}

}  // namespace

BitVector::BitVector(std::size_t width) : width_(width), words_(word_count(width), 0) {}

BitVector BitVector::from_string(std::string_view text) {
  BitVector out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '1') {
      out.set(i);
    } else if (c != '0') {
      throw std::invalid_argument("bit string contains '" + std::string(1, c) +
                                  "' at position " + std::to_string(i));
    }
  }
  return out;
}

BitVector BitVector::ones(std::size_t width) {
  BitVector out(width);
  out.fill(true);
  return out;
}

BitVector BitVector::one_hot(std::size_t width, std::size_t position) {
  BitVector out(width);
  out.set(position);
  return out;
}

bool BitVector::test(std::size_t pos) const {
  if (pos >= width_) {
    throw std::out_of_range("bit position " + std::to_string(pos) + " out of range for width " +
                            std::to_string(width_));
  }
  return (words_[pos / kWordBits] >> (pos % kWordBits)) & 1U;
}

void BitVector::set(std::size_t pos, bool value) {
  if (pos >= width_) {
    throw std::out_of_range("bit position " + std::to_string(pos) + " out of range for width " +
                            std::to_string(width_));
  }
  const Word mask = Word{1} << (pos % kWordBits);
  if (value) {
    words_[pos / kWordBits] |= mask;
  } else {
    words_[pos / kWordBits] &= ~mask;
  }
}

void BitVector::fill(bool value) {
  for (auto& w : words_) w = value ? ~Word{0} : Word{0};
  clear_tail();
}

std::size_t BitVector::count() const noexcept {
  std::size_t n = 0;
  for (const Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool BitVector::any() const noexcept {
  for (const Word w : words_) {
    if (w != 0) return true;
  }
  return false;
}

bool BitVector::intersects(const BitVector& other) const {
  require_same_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

std::vector<std::size_t> BitVector::set_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word bits = words_[w];
    while (bits != 0) {
      const auto low = static_cast<std::size_t>(std::countr_zero(bits));
      out.push_back(w * kWordBits + low);
      bits &= bits - 1;
    }
  }
  return out;
}

BitVector BitVector::slice(std::size_t offset, std::size_t width) const {
  if (offset + width > width_) {
    throw std::out_of_range("slice [" + std::to_string(offset) + ", " +
                            std::to_string(offset + width) + ") exceeds width " +
                            std::to_string(width_));
  }
  BitVector out(width);
  for (std::size_t i = 0; i < width; ++i) {
    if (test(offset + i)) out.set(i);
  }
  return out;
}

void BitVector::assign(std::size_t offset, const BitVector& src) {
  if (offset + src.size() > width_) {
    throw std::out_of_range("assign of width " + std::to_string(src.size()) + " at offset " +
                            std::to_string(offset) + " exceeds width " + std::to_string(width_));
  }
  for (std::size_t i = 0; i < src.size(); ++i) set(offset + i, src.test(i));
}

BitVector& BitVector::operator&=(const BitVector& rhs) {
  require_same_width(rhs);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= rhs.words_[i];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& rhs) {
  require_same_width(rhs);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= rhs.words_[i];
  return *this;
}

BitVector& BitVector::operator^=(const BitVector& rhs) {
  require_same_width(rhs);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= rhs.words_[i];
  return *this;
}

BitVector BitVector::operator~() const {
  BitVector out(*this);
  for (auto& w : out.words_) w = ~w;
  out.clear_tail();
  return out;
}

std::string BitVector::to_string() const {
  std::string out(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) {
    if (test(i)) out[i] = '1';
  }
  return out;
}

void BitVector::require_same_width(const BitVector& other) const {
  if (other.width_ != width_) {
    throw std::invalid_argument("bit width mismatch: " + std::to_string(width_) + " vs " +
                                std::to_string(other.width_));
  }
}

void BitVector::clear_tail() noexcept {
  const std::size_t rem = width_ % kWordBits;
  if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
}

BitVector concat(const BitVector& a, const BitVector& b) {
  BitVector out(a.size() + b.size());
  out.assign(0, a);
  out.assign(a.size(), b);
  return out;
}

}  // namespace nertcam
