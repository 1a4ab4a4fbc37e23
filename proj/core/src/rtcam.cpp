#include "nertcam/rtcam.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace nertcam {

Rtcam::Rtcam(SdrLayout layout, std::size_t capacity) : layout_(layout) {
  layout_.validate();
  if (capacity == 0) throw ConfigError("RTCAM capacity must be at least 1");
  words_per_row_ = (layout_.total() + BitVector::kWordBits - 1) / BitVector::kWordBits;
  words_.assign(capacity * words_per_row_, 0);
  valid_.assign(capacity, 1);
  empty_.assign(capacity, 1);
  match_ = BitVector(capacity);
  infer_class_out_ = SectionVec(layout_.class_bits);
}

void Rtcam::clear() {
  std::fill(words_.begin(), words_.end(), Word{0});
  std::fill(valid_.begin(), valid_.end(), std::uint8_t{1});
  std::fill(empty_.begin(), empty_.end(), std::uint8_t{1});
  occupancy_ = 0;
  clear_match();
  infer_class_out_.fill(false);
}

void Rtcam::reset() {
  std::fill(valid_.begin(), valid_.end(), std::uint8_t{1});
  clear_match();
}

bool Rtcam::row_matches(std::size_t row, std::span<const Word> query, std::span<const Word> care,
                        MatchMode mode) const {
  const Word* r = row_ptr(row);
  if (mode == MatchMode::Equality) {
    for (std::size_t w = 0; w < words_per_row_; ++w) {
      if (((r[w] ^ query[w]) & care[w]) != 0) return false;
    }
    return true;
  }
  for (std::size_t w = 0; w < words_per_row_; ++w) {
    if ((r[w] & query[w] & care[w]) != 0) return true;
  }
  return false;
}

bool Rtcam::lookup(const Sdr& query, const DcMask& dc, LookupScope scope, MatchMode mode,
                   ValidUpdate update) {
  if (query.size() != layout_.total() || dc.size() != layout_.total()) {
    throw LayoutError("lookup operands must be " + std::to_string(layout_.total()) + " bits");
  }
  const BitVector care = ~dc.bits();
  const auto q = query.bits().words();
  const auto c = care.words();

  match_.fill(false);
  valid_entry_ = false;
  for (std::size_t row = 0; row < capacity(); ++row) {
    const bool eligible = empty_[row] == 0 && (scope == LookupScope::All || valid_[row] != 0);
    const bool hit = eligible && row_matches(row, q, c, mode);
    if (hit) {
      match_.set(row);
      valid_entry_ = true;
    }
    if (update == ValidUpdate::Commit) valid_[row] = hit ? 1 : 0;
  }
  return valid_entry_;
}

SectionVec Rtcam::validate() {
  SectionVec classes(layout_.class_bits);
  for (std::size_t row = 0; row < capacity(); ++row) {
    if (empty_[row] == 0 && valid_[row] != 0) {
      classes |= section(row_bits(row).bits(), layout_, Section::Class);
    }
  }

  const Sdr query = make_sdr(SectionVec(layout_.feature_bits), SectionVec(layout_.location_bits),
                             classes, layout_);
  const DcMask dc(join(BitVector::ones(layout_.feature_bits), BitVector::ones(layout_.location_bits),
                       ~classes, layout_));
  lookup(query, dc, LookupScope::All, MatchMode::Membership, ValidUpdate::Commit);

  infer_class_out_ = classes;
  return classes;
}

std::optional<std::size_t> Rtcam::store(const Sdr& triplet) {
  if (triplet.size() != layout_.total()) {
    throw LayoutError("stored triplet must be " + std::to_string(layout_.total()) + " bits");
  }
  clear_match();
  const auto it = std::find(empty_.begin(), empty_.end(), std::uint8_t{1});
  if (it == empty_.end()) return std::nullopt;

  const auto row = static_cast<std::size_t>(it - empty_.begin());
  const auto src = triplet.bits().words();
  std::copy(src.begin(), src.end(), row_ptr(row));
  empty_[row] = 0;
  valid_[row] = 1;
  ++occupancy_;
  return row;
}

std::size_t Rtcam::remove_matched() {
  std::size_t removed = 0;
  for (const std::size_t row : match_.set_positions()) {
    if (empty_[row] == 0) {
      empty_[row] = 1;
      --occupancy_;
      ++removed;
    }
  }
  clear_match();
  return removed;
}

RtcamOutputs Rtcam::outputs() const {
  return {mem_out(), valid_entry_, infer_class_out_, full()};
}

std::vector<Entry> Rtcam::mem_out() const {
  std::vector<Entry> out;
  for (const std::size_t row : match_.set_positions()) out.push_back(entry(row));
  return out;
}

Entry Rtcam::entry(std::size_t row) const {
  auto parts = split(row_bits(row), layout_);
  return {std::move(parts.feature), std::move(parts.location), std::move(parts.class_bits),
          valid(row), empty(row)};
}

Sdr Rtcam::row_bits(std::size_t row) const {
  if (row >= capacity()) throw std::out_of_range("row " + std::to_string(row) + " out of range");
  BitVector bits(layout_.total());
  const Word* r = row_ptr(row);
  for (std::size_t p = 0; p < layout_.total(); ++p) {
    if ((r[p / BitVector::kWordBits] >> (p % BitVector::kWordBits)) & 1U) bits.set(p);
  }
  return Sdr(std::move(bits));
}

void Rtcam::overwrite_row(std::size_t row, const Sdr& bits, bool valid, bool empty) {
  if (row >= capacity()) throw std::out_of_range("row " + std::to_string(row) + " out of range");
  if (bits.size() != layout_.total()) {
    throw LayoutError("row must be " + std::to_string(layout_.total()) + " bits");
  }
  const auto src = bits.bits().words();
  std::copy(src.begin(), src.end(), row_ptr(row));
  if (empty_[row] == 0 && empty) --occupancy_;
  if (empty_[row] != 0 && !empty) ++occupancy_;
  valid_[row] = valid ? 1 : 0;
  empty_[row] = empty ? 1 : 0;
}

void Rtcam::clear_match() {
  match_.fill(false);
  valid_entry_ = false;
}

void Rtcam::save_image(std::ostream& out) const {
  for (std::size_t row = 0; row < capacity(); ++row) {
    out << row << ' ' << format_sectioned(row_bits(row).bits(), layout_) << ' '
        << (valid_[row] != 0 ? 1 : 0) << ' ' << (empty_[row] != 0 ? 1 : 0) << '\n';
  }
}

std::string Rtcam::image() const {
  std::ostringstream out;
  save_image(out);
  return out.str();
}

void Rtcam::load_image(std::istream& in) {
  clear();
  std::vector<bool> seen(capacity(), false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    std::istringstream fields(line);
    long long index = -1;
    std::string bits;
    int v = -1;
    int e = -1;
    std::string extra;
    if (!(fields >> index >> bits >> v >> e) || (fields >> extra)) {
      throw ParseError(line_no, "expected \"index feature|location|class V E\"");
    }
    if (index < 0 || static_cast<std::size_t>(index) >= capacity()) {
      throw ParseError(line_no, "row index " + std::to_string(index) + " out of range");
    }
    const auto row = static_cast<std::size_t>(index);
    if (seen[row]) throw ParseError(line_no, "row " + std::to_string(row) + " listed twice");
    if ((v != 0 && v != 1) || (e != 0 && e != 1)) {
      throw ParseError(line_no, "V and E must be 0 or 1");
    }
    Sdr sdr;
    try {
      sdr = parse_sdr(bits, layout_);
    } catch (const LayoutError& err) {
      throw ParseError(line_no, err.what());
    }
    seen[row] = true;
    overwrite_row(row, sdr, v == 1, e == 1);
  }
}

}  // namespace nertcam
