#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "nertcam/sdr.hpp"

namespace nertcam {

/// What each timed iteration does against a fully populated memory.
enum class OpMix {
  Lookup,       // one raw equality lookup micro-op, All scope
  Infer,        // RESET-free INFER of a stored pair
  Predict,      // PREDICT_FEATURE of a random location
  StoreDelete,  // DELETE of a stored triplet followed by its re-STORE
};

std::string_view to_string(OpMix mix) noexcept;
std::optional<OpMix> parse_op_mix(std::string_view name) noexcept;

struct BenchPoint {
  std::size_t entries = 0;
  std::size_t iterations = 0;
  double seconds = 0.0;
  double ops_per_sec = 0.0;
  double ns_per_op = 0.0;
  /// Device clock cycles consumed per iteration (0 for raw lookups).
  double cycles_per_op = 0.0;
};

/// 64, 128, 256, 512, 1024.
std::vector<std::size_t> default_bench_sizes();

/// Times `iterations` operations at each memory size. Zero iterations yields
/// no points.
std::vector<BenchPoint> run_bench(const SdrLayout& layout, const std::vector<std::size_t>& sizes,
                                  OpMix mix, std::size_t iterations, std::uint64_t seed = 1);

}  // namespace nertcam
