#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nertcam/sdr.hpp"

namespace nertcam {

/// One row of the array: a stored triplet plus its valid (V) and empty (E) bits.
struct Entry {
  SectionVec feature;
  SectionVec location;
  SectionVec class_bits;
  bool valid = true;
  bool empty = true;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Which rows a lookup may match. ValidOnly restricts to rows whose valid bit
/// was set before the lookup; All ignores valid bits.
enum class LookupScope { ValidOnly, All };

/// Equality: every unmasked position agrees. Membership: some unmasked
/// position is hot in both row and query.
enum class MatchMode { Equality, Membership };

/// Commit overwrites every valid bit with the row's match result. Discard
/// leaves valid bits alone (used by PREDICT).
enum class ValidUpdate { Commit, Discard };

struct RtcamOutputs {
  std::vector<Entry> mem_out;
  bool valid_entry = false;
  SectionVec infer_class_out;
  bool full = false;
};

/// Reverse ternary CAM array: binary rows searched by queries that carry
/// don't-care bits. Every matching row is reported; there is no priority
/// encoding. All micro-ops are single-writer and serialized by the caller.
class Rtcam {
 public:
  /// Throws LayoutError for a bad layout and ConfigError for zero capacity.
  Rtcam(SdrLayout layout, std::size_t capacity);

  const SdrLayout& layout() const noexcept { return layout_; }
  std::size_t capacity() const noexcept { return valid_.size(); }
  std::size_t occupancy() const noexcept { return occupancy_; }
  bool full() const noexcept { return occupancy_ == capacity(); }

  // Micro-ops.

  /// Zeroes every row and sets empty=1, valid=1.
  void clear();
  /// Sets every valid bit to 1; contents and empty bits are untouched.
  void reset();
  /// Matches every row and returns valid_entry (OR of the match vector).
  bool lookup(const Sdr& query, const DcMask& dc, LookupScope scope, MatchMode mode,
              ValidUpdate update = ValidUpdate::Commit);
  /// Class closure after a lookup: ORs the class sections of currently valid
  /// rows into a k-hot vector, then re-validates every non-empty row whose
  /// class is in that set via an internal membership lookup.
  SectionVec validate();
  /// Writes the triplet into the lowest-index empty row. Returns the row, or
  /// nullopt when the array is full (array unchanged).
  std::optional<std::size_t> store(const Sdr& triplet);
  /// Marks every row matched by the latest lookup as empty. Returns the
  /// number of rows removed.
  std::size_t remove_matched();

  // Read side.

  RtcamOutputs outputs() const;
  std::vector<Entry> mem_out() const;
  const BitVector& match_vector() const noexcept { return match_; }
  bool valid_entry() const noexcept { return valid_entry_; }
  const SectionVec& infer_class_out() const noexcept { return infer_class_out_; }

  Entry entry(std::size_t row) const;
  Sdr row_bits(std::size_t row) const;
  bool valid(std::size_t row) const { return valid_.at(row) != 0; }
  bool empty(std::size_t row) const { return empty_.at(row) != 0; }

  /// Replaces one row verbatim. Intended for loading images and building
  /// fault-injection fixtures.
  void overwrite_row(std::size_t row, const Sdr& bits, bool valid, bool empty);

  // Image format: one line per row, "index feature|location|class V E".

  void save_image(std::ostream& out) const;
  std::string image() const;
  /// Resets the array to cleared state, then applies every row in the image.
  /// Rows not mentioned stay cleared. Throws ParseError with the line number.
  void load_image(std::istream& in);

 private:
  using Word = BitVector::Word;

  const Word* row_ptr(std::size_t row) const { return &words_[row * words_per_row_]; }
  Word* row_ptr(std::size_t row) { return &words_[row * words_per_row_]; }
  bool row_matches(std::size_t row, std::span<const Word> query, std::span<const Word> care,
                   MatchMode mode) const;
  void clear_match();

  SdrLayout layout_;
  std::size_t words_per_row_ = 0;
  std::vector<Word> words_;
  std::vector<std::uint8_t> valid_;
  std::vector<std::uint8_t> empty_;
  std::size_t occupancy_ = 0;

  BitVector match_;
  bool valid_entry_ = false;
  SectionVec infer_class_out_;
};

}  // namespace nertcam
