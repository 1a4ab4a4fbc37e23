#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

#include "nertcam/bit_vector.hpp"
#include "nertcam/errors.hpp"

namespace nertcam {

enum class Section { Feature, Location, Class };

std::string_view to_string(Section section) noexcept;

/// Section widths of an SDR. Sections are laid out feature|location|class,
/// left to right.
struct SdrLayout {
  std::size_t feature_bits = 0;
  std::size_t location_bits = 0;
  std::size_t class_bits = 0;

  constexpr std::size_t total() const noexcept { return feature_bits + location_bits + class_bits; }
  constexpr std::size_t offset(Section s) const noexcept {
    switch (s) {
      case Section::Feature: return 0;
      case Section::Location: return feature_bits;
      case Section::Class: return feature_bits + location_bits;
    }
    return 0;
  }
  constexpr std::size_t width(Section s) const noexcept {
    switch (s) {
      case Section::Feature: return feature_bits;
      case Section::Location: return location_bits;
      case Section::Class: return class_bits;
    }
    return 0;
  }

  /// Throws LayoutError unless every section is at least one bit wide.
  void validate() const;

  /// 128-bit feature, 25-bit location (5x5 grid), 10-bit class.
  static constexpr SdrLayout mnist_scale() noexcept { return {128, 25, 10}; }

  friend bool operator==(const SdrLayout&, const SdrLayout&) = default;
};

/// A BitVector with a distinct type per role, so an input SDR cannot be
/// passed where a don't-care mask is expected.
template <typename Tag>
class TaggedBits {
 public:
  TaggedBits() = default;
  explicit TaggedBits(std::size_t width) : bits_(width) {}
  explicit TaggedBits(BitVector bits) : bits_(std::move(bits)) {}

  const BitVector& bits() const noexcept { return bits_; }
  BitVector& bits() noexcept { return bits_; }

  std::size_t size() const noexcept { return bits_.size(); }
  bool test(std::size_t pos) const { return bits_.test(pos); }
  std::string to_string() const { return bits_.to_string(); }

  friend bool operator==(const TaggedBits&, const TaggedBits&) = default;

 private:
  BitVector bits_;
};

/// Input SDR (the query or the stored triplet).
using Sdr = TaggedBits<struct SdrTag>;
/// Don't-care mask: 1 = ignore the position, 0 = compare it.
using DcMask = TaggedBits<struct DcMaskTag>;
/// One section's worth of bits; also the k-hot output vectors.
using SectionVec = BitVector;

struct SplitSdr {
  SectionVec feature;
  SectionVec location;
  SectionVec class_bits;

  friend bool operator==(const SplitSdr&, const SplitSdr&) = default;
};

SplitSdr split(const BitVector& bits, const SdrLayout& layout);
inline SplitSdr split(const Sdr& sdr, const SdrLayout& layout) { return split(sdr.bits(), layout); }

SectionVec section(const BitVector& bits, const SdrLayout& layout, Section s);

/// Builds feature|location|class. Throws LayoutError if a part has the wrong width.
BitVector join(const SectionVec& feature, const SectionVec& location, const SectionVec& class_bits,
               const SdrLayout& layout);
Sdr make_sdr(const SectionVec& feature, const SectionVec& location, const SectionVec& class_bits,
             const SdrLayout& layout);

bool is_one_hot(const SectionVec& v) noexcept;

/// True iff stored and query agree at every position the mask does not ignore.
bool equality_match(const BitVector& stored, const BitVector& query, const BitVector& dc);
inline bool equality_match(const Sdr& stored, const Sdr& query, const DcMask& dc) {
  return equality_match(stored.bits(), query.bits(), dc.bits());
}

/// True iff some unmasked position is set in both stored and query.
bool membership_match(const BitVector& stored, const BitVector& query, const BitVector& dc);
inline bool membership_match(const Sdr& stored, const Sdr& query, const DcMask& dc) {
  return membership_match(stored.bits(), query.bits(), dc.bits());
}

/// Parses the canonical text form. Accepts either `layout.total()` bare
/// characters or three sections separated by '|'.
BitVector parse_sectioned(std::string_view text, const SdrLayout& layout);
Sdr parse_sdr(std::string_view text, const SdrLayout& layout);
DcMask parse_dc(std::string_view text, const SdrLayout& layout);

/// "feature|location|class".
std::string format_sectioned(const BitVector& bits, const SdrLayout& layout);

}  // namespace nertcam
