#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "nertcam/commands.hpp"

// Golden model of the device's command semantics. It works on index sets and
// intentionally does not use the bit-string or array code it is compared
// against.
namespace nertcam::golden {

struct Geometry {
  std::size_t feature_count = 0;
  std::size_t location_count = 0;
  std::size_t class_count = 0;
  /// Row length of the location grid; 0 means locations form a line.
  std::size_t grid_cols = 0;
  std::size_t capacity = 0;
};

struct Triplet {
  /// Sorted hot feature indices (a single index unless features are k-hot).
  std::vector<std::size_t> features;
  std::size_t location = 0;
  std::size_t class_index = 0;

  friend auto operator<=>(const Triplet&, const Triplet&) = default;
};

struct Command {
  CommandKind kind = CommandKind::Reset;
  std::vector<std::size_t> features;
  std::optional<std::size_t> location;
  std::optional<std::size_t> class_index;
  std::size_t padding = 0;
};

struct Response {
  Outcome outcome = Outcome::Success;
  bool full = false;
  std::vector<std::size_t> classes;
  std::vector<std::size_t> predicted_features;
  std::vector<std::size_t> predicted_locations;
  std::vector<std::size_t> predicted_classes;

  friend bool operator==(const Response&, const Response&) = default;
};

class GoldenModel {
 public:
  explicit GoldenModel(Geometry geometry);

  /// Applies one well-formed command. Throws std::invalid_argument when a
  /// field the command needs is missing or out of range.
  Response apply(const Command& cmd);

  const std::set<Triplet>& triplets() const noexcept { return triplets_; }
  const std::set<std::size_t>& valid_classes() const noexcept { return valid_; }
  const Geometry& geometry() const noexcept { return geometry_; }

  /// Adds a triplet without going through STORE (fixtures).
  void insert(Triplet t) { triplets_.insert(std::move(t)); }

 private:
  Triplet triplet_of(const Command& cmd) const;
  bool within(std::size_t stored_location, std::size_t query_location, std::size_t padding) const;
  void validate_all();
  bool full() const noexcept { return triplets_.size() >= geometry_.capacity; }

  Geometry geometry_;
  std::set<Triplet> triplets_;
  std::set<std::size_t> valid_;
};

}  // namespace nertcam::golden
