#include "nertcam/prediction_map.hpp"

namespace nertcam {

PredictionOutput empty_prediction(const SdrLayout& layout) {
  return {SectionVec(layout.feature_bits), SectionVec(layout.location_bits),
          SectionVec(layout.class_bits)};
}

PredictionOutput condense(std::span<const Entry> matched, CommandKind kind,
                          const SdrLayout& layout) {
  PredictionOutput out = empty_prediction(layout);
  if (!is_predict(kind)) return out;

  for (const Entry& row : matched) {
    if (kind == CommandKind::PredictFeature) {
      out.features |= row.feature;
    } else {
      out.locations |= row.location;
    }
    out.classes |= row.class_bits;
  }
  return out;
}

}  // namespace nertcam
