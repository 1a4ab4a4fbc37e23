#include "nertcam/preprocess.hpp"

#include <algorithm>
#include <string>

namespace nertcam {

namespace {

enum class Shape { OneHot, NonZero, Zero };

std::string_view describe(Shape shape) {
  switch (shape) {
    case Shape::OneHot: return "one-hot";
    case Shape::NonZero: return "nonzero";
    case Shape::Zero: return "all-zero";
  }
  return "?";
}

bool conforms(const SectionVec& v, Shape shape) {
  switch (shape) {
    case Shape::OneHot: return is_one_hot(v);
    case Shape::NonZero: return v.any();
    case Shape::Zero: return v.none();
  }
  return false;
}

struct SectionShapes {
  Shape feature;
  Shape location;
  Shape class_bits;
};

std::optional<SectionShapes> required_shapes(CommandKind kind, bool khot_features) {
  const Shape hot_feature = khot_features ? Shape::NonZero : Shape::OneHot;
  switch (kind) {
    case CommandKind::Clear:
    case CommandKind::Reset:
      return std::nullopt;
    case CommandKind::Store:
    case CommandKind::Delete:
      return SectionShapes{hot_feature, Shape::OneHot, Shape::OneHot};
    case CommandKind::Infer:
      return SectionShapes{hot_feature, Shape::OneHot, Shape::Zero};
    case CommandKind::PredictFeature:
      return SectionShapes{Shape::Zero, Shape::OneHot, Shape::Zero};
    case CommandKind::PredictLocation:
      return SectionShapes{hot_feature, Shape::Zero, Shape::Zero};
  }
  return std::nullopt;
}

}  // namespace

void PaddingMode::validate(std::size_t location_bits) const {
  if (kind == Kind::Grid2D && rows * cols != location_bits) {
    throw LayoutError("grid " + std::to_string(rows) + "x" + std::to_string(cols) +
                      " does not cover " + std::to_string(location_bits) + " location bits");
  }
}

std::optional<InputError> validate_command(const MacroCommand& cmd, const SdrLayout& layout,
                                           bool khot_features) {
  if (cmd.padding != 0 && cmd.kind != CommandKind::PredictFeature) {
    return InputError{std::nullopt, std::string(to_string(cmd.kind)) + " does not accept padding"};
  }
  const auto shapes = required_shapes(cmd.kind, khot_features);
  if (!shapes) return std::nullopt;

  if (cmd.input.size() != layout.total()) {
    return InputError{std::nullopt, "input has " + std::to_string(cmd.input.size()) +
                                        " bits, layout needs " + std::to_string(layout.total())};
  }
  const auto parts = split(cmd.input, layout);
  const std::pair<Section, std::pair<const SectionVec*, Shape>> checks[] = {
      {Section::Feature, {&parts.feature, shapes->feature}},
      {Section::Location, {&parts.location, shapes->location}},
      {Section::Class, {&parts.class_bits, shapes->class_bits}},
  };
  for (const auto& [sec, check] : checks) {
    const auto& [vec, shape] = check;
    if (!conforms(*vec, shape)) {
      return InputError{sec, std::string(to_string(cmd.kind)) + " requires a " +
                                 std::string(describe(shape)) + " " +
                                 std::string(to_string(sec)) + " section, got " +
                                 vec->to_string()};
    }
  }
  return std::nullopt;
}

DcMask build_dc(const MacroCommand& cmd, const SdrLayout& layout, const PaddingMode& mode) {
  const SectionVec feature_zero(layout.feature_bits);
  const SectionVec location_zero(layout.location_bits);
  const SectionVec class_zero(layout.class_bits);

  switch (cmd.kind) {
    case CommandKind::Clear:
    case CommandKind::Reset:
    case CommandKind::Store:
    case CommandKind::Delete:
      return DcMask(layout.total());
    case CommandKind::Infer: {
      const auto location = padding_window(section(cmd.input.bits(), layout, Section::Location),
                                           cmd.padding, mode);
      return DcMask(join(feature_zero, location, BitVector::ones(layout.class_bits), layout));
    }
    case CommandKind::PredictFeature: {
      const auto location = padding_window(section(cmd.input.bits(), layout, Section::Location),
                                           cmd.padding, mode);
      return DcMask(join(BitVector::ones(layout.feature_bits), location,
                         BitVector::ones(layout.class_bits), layout));
    }
    case CommandKind::PredictLocation:
      return DcMask(join(feature_zero, BitVector::ones(layout.location_bits),
                         BitVector::ones(layout.class_bits), layout));
  }
  return DcMask(layout.total());
}

SectionVec padding_window(const SectionVec& location, std::size_t padding,
                          const PaddingMode& mode) {
  if (!is_one_hot(location)) {
    throw std::invalid_argument("padding window needs a one-hot location, got " +
                                location.to_string());
  }
  mode.validate(location.size());
  SectionVec window(location.size());
  if (padding == 0) return window;

  const std::size_t hot = location.set_positions().front();
  if (mode.kind == PaddingMode::Kind::Linear1D) {
    const std::size_t lo = hot > padding ? hot - padding : 0;
    const std::size_t hi = std::min(location.size() - 1, hot + padding);
    for (std::size_t p = lo; p <= hi; ++p) window.set(p);
    return window;
  }

  const std::size_t hot_row = hot / mode.cols;
  const std::size_t hot_col = hot % mode.cols;
  const std::size_t row_lo = hot_row > padding ? hot_row - padding : 0;
  const std::size_t row_hi = std::min(mode.rows - 1, hot_row + padding);
  const std::size_t col_lo = hot_col > padding ? hot_col - padding : 0;
  const std::size_t col_hi = std::min(mode.cols - 1, hot_col + padding);
  for (std::size_t r = row_lo; r <= row_hi; ++r) {
    for (std::size_t c = col_lo; c <= col_hi; ++c) window.set(r * mode.cols + c);
  }
  return window;
}

}  // namespace nertcam
