#include "nertcam/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nertcam::golden {

namespace {

std::size_t distance(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

std::vector<std::size_t> to_vector(const std::set<std::size_t>& s) { return {s.begin(), s.end()}; }

}  // namespace

GoldenModel::GoldenModel(Geometry geometry) : geometry_(geometry) {
  if (geometry_.grid_cols != 0 && geometry_.location_count % geometry_.grid_cols != 0) {
    throw std::invalid_argument("grid columns must divide the location count");
  }
  validate_all();
}

void GoldenModel::validate_all() {
  valid_.clear();
  for (std::size_t c = 0; c < geometry_.class_count; ++c) valid_.insert(c);
}

Triplet GoldenModel::triplet_of(const Command& cmd) const {
  if (cmd.features.empty() || !cmd.location || !cmd.class_index) {
    throw std::invalid_argument(std::string(to_string(cmd.kind)) +
                                " needs feature, location and class");
  }
  Triplet t{cmd.features, *cmd.location, *cmd.class_index};
  std::sort(t.features.begin(), t.features.end());
  return t;
}

bool GoldenModel::within(std::size_t stored_location, std::size_t query_location,
                         std::size_t padding) const {
  if (geometry_.grid_cols == 0) return distance(stored_location, query_location) <= padding;
  const std::size_t cols = geometry_.grid_cols;
  const std::size_t dr = distance(stored_location / cols, query_location / cols);
  const std::size_t dc = distance(stored_location % cols, query_location % cols);
  return std::max(dr, dc) <= padding;
}

Response GoldenModel::apply(const Command& cmd) {
  Response r;
  switch (cmd.kind) {
    case CommandKind::Clear:
      triplets_.clear();
      validate_all();
      break;

    case CommandKind::Reset:
      validate_all();
      break;

    case CommandKind::Store: {
      const Triplet t = triplet_of(cmd);
      if (triplets_.contains(t) || full()) {
        r.outcome = Outcome::StoreFailed;
      } else {
        triplets_.insert(t);
      }
      validate_all();
      break;
    }

    case CommandKind::Delete: {
      const Triplet t = triplet_of(cmd);
      if (triplets_.erase(t) == 0) r.outcome = Outcome::DeleteFailed;
      validate_all();
      break;
    }

    case CommandKind::Infer: {
      if (cmd.features.empty() || !cmd.location) {
        throw std::invalid_argument("INFER needs feature and location");
      }
      std::vector<std::size_t> features = cmd.features;
      std::sort(features.begin(), features.end());

      std::set<std::size_t> holders;
      for (const Triplet& t : triplets_) {
        if (t.features == features && t.location == *cmd.location) holders.insert(t.class_index);
      }
      std::set<std::size_t> narrowed;
      std::set_intersection(holders.begin(), holders.end(), valid_.begin(), valid_.end(),
                            std::inserter(narrowed, narrowed.end()));
      if (!narrowed.empty()) {
        valid_ = narrowed;
        r.classes = to_vector(narrowed);
      } else if (!holders.empty()) {
        valid_ = holders;
        r.outcome = Outcome::ContextSwitch;
        r.classes = to_vector(holders);
      } else {
        validate_all();
        r.outcome = Outcome::InferFailed;
      }
      break;
    }

    case CommandKind::PredictFeature: {
      if (!cmd.location) throw std::invalid_argument("PREDICT_FEATURE needs a location");
      std::set<std::size_t> features;
      std::set<std::size_t> classes;
      for (const Triplet& t : triplets_) {
        if (valid_.contains(t.class_index) && within(t.location, *cmd.location, cmd.padding)) {
          features.insert(t.features.begin(), t.features.end());
          classes.insert(t.class_index);
        }
      }
      r.predicted_features = to_vector(features);
      r.predicted_classes = to_vector(classes);
      break;
    }

    case CommandKind::PredictLocation: {
      if (cmd.features.empty()) throw std::invalid_argument("PREDICT_LOCATION needs a feature");
      std::vector<std::size_t> query = cmd.features;
      std::sort(query.begin(), query.end());
      std::set<std::size_t> locations;
      std::set<std::size_t> classes;
      for (const Triplet& t : triplets_) {
        if (valid_.contains(t.class_index) && t.features == query) {
          locations.insert(t.location);
          classes.insert(t.class_index);
        }
      }
      r.predicted_locations = to_vector(locations);
      r.predicted_classes = to_vector(classes);
      break;
    }
  }
  r.full = full();
  return r;
}

}  // namespace nertcam::golden
