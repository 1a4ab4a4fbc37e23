#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "nertcam/commands.hpp"
#include "nertcam/sdr.hpp"

namespace nertcam {

struct MacroCommand {
  CommandKind kind = CommandKind::Reset;
  Sdr input;
  /// Location fuzziness; only PREDICT_FEATURE may carry a nonzero value.
  std::size_t padding = 0;

  friend bool operator==(const MacroCommand&, const MacroCommand&) = default;
};

/// How location positions map onto sensor geometry when padding is applied.
struct PaddingMode {
  enum class Kind { Linear1D, Grid2D };

  Kind kind = Kind::Linear1D;
  std::size_t rows = 0;
  std::size_t cols = 0;

  static constexpr PaddingMode linear() noexcept { return {}; }
  static constexpr PaddingMode grid(std::size_t rows, std::size_t cols) noexcept {
    return {Kind::Grid2D, rows, cols};
  }

  /// Throws LayoutError if Grid2D dimensions do not cover exactly `location_bits`.
  void validate(std::size_t location_bits) const;

  friend bool operator==(const PaddingMode&, const PaddingMode&) = default;
};

/// Reason a command's input SDR does not have the shape its kind requires.
struct InputError {
  std::optional<Section> section;
  std::string message;

  friend bool operator==(const InputError&, const InputError&) = default;
};

/// Thrown by call paths that cannot return an InputError by value.
class InvalidCommand : public std::invalid_argument {
 public:
  explicit InvalidCommand(InputError error)
      : std::invalid_argument(error.message), error_(std::move(error)) {}
  const InputError& error() const noexcept { return error_; }

 private:
  InputError error_;
};

/// Checks the per-kind section shape:
///   STORE/DELETE      feature, location, class one-hot
///   INFER             feature, location one-hot; class zero
///   PREDICT_FEATURE   location one-hot; feature, class zero
///   PREDICT_LOCATION  feature one-hot; location, class zero
///   CLEAR/RESET       input ignored
/// With `khot_features`, "one-hot" for the feature section relaxes to nonzero.
std::optional<InputError> validate_command(const MacroCommand& cmd, const SdrLayout& layout,
                                           bool khot_features = false);

/// Don't-care mask for a validated command.
DcMask build_dc(const MacroCommand& cmd, const SdrLayout& layout, const PaddingMode& mode);

/// Mask for the location section: 1s at every position within `padding` of
/// the hot position (clamped at the edges), zeros elsewhere. Padding 0 gives
/// an all-zero section. Linear1D measures string-position distance, Grid2D
/// measures Chebyshev distance on a row-major grid.
SectionVec padding_window(const SectionVec& location, std::size_t padding, const PaddingMode& mode);

}  // namespace nertcam
