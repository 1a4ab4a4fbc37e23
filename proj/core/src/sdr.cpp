#include "nertcam/sdr.hpp"

#include <string>

namespace nertcam {

namespace {

void require_width(const BitVector& bits, std::size_t expected, std::string_view what) {
  if (bits.size() != expected) {
    throw LayoutError(std::string(what) + " has width " + std::to_string(bits.size()) +
                      ", expected " + std::to_string(expected));
  }
}

void require_same_widths(const BitVector& stored, const BitVector& query, const BitVector& dc) {
  if (stored.size() != query.size() || stored.size() != dc.size()) {
    throw LayoutError("match operands differ in width: stored " + std::to_string(stored.size()) +
                      ", query " + std::to_string(query.size()) + ", dc " +
                      std::to_string(dc.size()));
  }
}

}  // namespace

std::string_view to_string(Section section) noexcept {
  switch (section) {
    case Section::Feature: return "feature";
    case Section::Location: return "location";
    case Section::Class: return "class";
  }
  return "?";
}

void SdrLayout::validate() const {
  if (feature_bits == 0 || location_bits == 0 || class_bits == 0) {
    throw LayoutError("layout sections must each be at least 1 bit wide (got " +
                      std::to_string(feature_bits) + "/" + std::to_string(location_bits) + "/" +
                      std::to_string(class_bits) + ")");
  }
}

SplitSdr split(const BitVector& bits, const SdrLayout& layout) {
  require_width(bits, layout.total(), "SDR");
  return {bits.slice(layout.offset(Section::Feature), layout.feature_bits),
          bits.slice(layout.offset(Section::Location), layout.location_bits),
          bits.slice(layout.offset(Section::Class), layout.class_bits)};
}

SectionVec section(const BitVector& bits, const SdrLayout& layout, Section s) {
  require_width(bits, layout.total(), "SDR");
  return bits.slice(layout.offset(s), layout.width(s));
}

BitVector join(const SectionVec& feature, const SectionVec& location, const SectionVec& class_bits,
               const SdrLayout& layout) {
  require_width(feature, layout.feature_bits, "feature section");
  require_width(location, layout.location_bits, "location section");
  require_width(class_bits, layout.class_bits, "class section");
  BitVector out(layout.total());
  out.assign(layout.offset(Section::Feature), feature);
  out.assign(layout.offset(Section::Location), location);
  out.assign(layout.offset(Section::Class), class_bits);
  return out;
}

Sdr make_sdr(const SectionVec& feature, const SectionVec& location, const SectionVec& class_bits,
             const SdrLayout& layout) {
  return Sdr(join(feature, location, class_bits, layout));
}

bool is_one_hot(const SectionVec& v) noexcept { return v.count() == 1; }

bool equality_match(const BitVector& stored, const BitVector& query, const BitVector& dc) {
  require_same_widths(stored, query, dc);
  const auto s = stored.words();
  const auto q = query.words();
  const auto m = dc.words();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (((s[i] ^ q[i]) & ~m[i]) != 0) return false;
  }
  return true;
}

bool membership_match(const BitVector& stored, const BitVector& query, const BitVector& dc) {
  require_same_widths(stored, query, dc);
  const auto s = stored.words();
  const auto q = query.words();
  const auto m = dc.words();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((s[i] & q[i] & ~m[i]) != 0) return true;
  }
  return false;
}

BitVector parse_sectioned(std::string_view text, const SdrLayout& layout) {
  std::string compact;
  compact.reserve(text.size());
  std::size_t separators = 0;
  std::size_t section_start = 0;
  for (const char c : text) {
    if (c == '|') {
      const std::size_t expected =
          separators == 0 ? layout.feature_bits : layout.location_bits;
      if (separators >= 2 || compact.size() - section_start != expected) {
        throw LayoutError("misplaced '|' in \"" + std::string(text) + "\"");
      }
      ++separators;
      section_start = compact.size();
      continue;
    }
    compact.push_back(c);
  }
  if (separators == 1) throw LayoutError("expected 0 or 2 '|' separators in \"" + std::string(text) + "\"");
  if (compact.size() != layout.total()) {
    throw LayoutError("bit string \"" + std::string(text) + "\" has " +
                      std::to_string(compact.size()) + " bits, layout needs " +
                      std::to_string(layout.total()));
  }
  try {
    return BitVector::from_string(compact);
  } catch (const std::invalid_argument& e) {
    throw LayoutError(e.what());
  }
}

Sdr parse_sdr(std::string_view text, const SdrLayout& layout) {
  return Sdr(parse_sectioned(text, layout));
}

DcMask parse_dc(std::string_view text, const SdrLayout& layout) {
  return DcMask(parse_sectioned(text, layout));
}

std::string format_sectioned(const BitVector& bits, const SdrLayout& layout) {
  const auto parts = split(bits, layout);
  return parts.feature.to_string() + "|" + parts.location.to_string() + "|" +
         parts.class_bits.to_string();
}

}  // namespace nertcam
