#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nertcam/trace.hpp"

namespace nertcam {

enum class SensationOrder { Sequential, Random };

struct DatasetParams {
  std::size_t classes = 10;
  std::size_t rows = 5;
  std::size_t cols = 5;
  /// Features are drawn from indices [0, feature_pool).
  std::size_t feature_pool = 128;
  std::size_t samples_per_class = 1;
  SensationOrder order = SensationOrder::Sequential;
  std::uint64_t seed = 1;
  /// Feature section width the indices must fit in.
  std::size_t feature_bits = 128;
};

/// Per object sample, a map from grid location (row-major) to feature index.
///
/// Every (class, sample) map is distinct from every other, and the samples of
/// one class never share a feature at the same location, so all stored
/// triplets are distinct.
struct Dataset {
  DatasetParams params;
  /// maps[class][sample][location] = feature index
  std::vector<std::vector<std::vector<std::size_t>>> maps;

  std::size_t locations() const noexcept { return params.rows * params.cols; }
  std::size_t entry_count() const noexcept {
    return params.classes * params.samples_per_class * locations();
  }
};

/// Throws std::invalid_argument on inconsistent parameters.
Dataset generate_dataset(const DatasetParams& params);

/// STORE of every triplet, class-major, then sample, then location.
std::vector<TraceRecord> store_trace(const Dataset& dataset);

/// For every class and sample: RESET, then one INFER per location in the
/// requested order. Random order reshuffles independently per object.
std::vector<TraceRecord> infer_trace(const Dataset& dataset);

/// One INFER per location of `sample`, visiting locations in `order`.
std::vector<TraceRecord> sensation_stream(const Dataset& dataset, std::size_t class_index,
                                          std::size_t sample,
                                          const std::vector<std::size_t>& order);

/// Config matching the dataset: grid padding mode, one class bit per class.
NertcamConfig dataset_config(const Dataset& dataset, std::size_t capacity);

void write_dataset(std::ostream& out, const Dataset& dataset);

/// Writes config.json, dataset.jsonl, store.jsonl and infer.jsonl into `dir`.
void write_dataset_files(const std::string& dir, const Dataset& dataset, std::size_t capacity);

}  // namespace nertcam
