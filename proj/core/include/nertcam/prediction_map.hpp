#pragma once

#include <span>

#include "nertcam/commands.hpp"
#include "nertcam/rtcam.hpp"

namespace nertcam {

/// k-hot outputs of a PREDICT. An all-zero triple means the prediction failed.
struct PredictionOutput {
  SectionVec features;
  SectionVec locations;
  SectionVec classes;

  bool failed() const noexcept { return features.none() && locations.none() && classes.none(); }

  friend bool operator==(const PredictionOutput&, const PredictionOutput&) = default;
};

/// All-zero output sized for `layout`.
PredictionOutput empty_prediction(const SdrLayout& layout);

/// Folds matched rows into k-hot vectors by OR-reduction. PREDICT_FEATURE
/// holds the location output low, PREDICT_LOCATION holds the feature output
/// low, and every other command produces an all-zero triple.
PredictionOutput condense(std::span<const Entry> matched, CommandKind kind, const SdrLayout& layout);

}  // namespace nertcam
