#include "nertcam/bench.hpp"

#include <array>
#include <chrono>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "nertcam/system.hpp"

namespace nertcam {

namespace {

constexpr std::array<std::pair<OpMix, std::string_view>, 4> kMixNames{{
    {OpMix::Lookup, "lookup"},
    {OpMix::Infer, "infer"},
    {OpMix::Predict, "predict"},
    {OpMix::StoreDelete, "store-delete"},
}};

struct Triplet {
  std::size_t feature;
  std::size_t location;
  std::size_t class_index;
};

Sdr triplet_sdr(const Triplet& t, const SdrLayout& layout, bool with_class = true) {
  SectionVec c(layout.class_bits);
  if (with_class) c.set(t.class_index);
  return make_sdr(SectionVec::one_hot(layout.feature_bits, t.feature),
                  SectionVec::one_hot(layout.location_bits, t.location), c, layout);
}

std::vector<Triplet> distinct_triplets(const SdrLayout& layout, std::size_t n, std::mt19937_64& rng) {
  if (n > layout.feature_bits * layout.location_bits * layout.class_bits) {
    throw std::invalid_argument("layout has fewer distinct triplets than requested entries");
  }
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  std::vector<Triplet> out;
  std::uniform_int_distribution<std::size_t> f(0, layout.feature_bits - 1);
  std::uniform_int_distribution<std::size_t> l(0, layout.location_bits - 1);
  std::uniform_int_distribution<std::size_t> c(0, layout.class_bits - 1);
  while (out.size() < n) {
    const Triplet t{f(rng), l(rng), c(rng)};
    if (seen.emplace(t.feature, t.location, t.class_index).second) out.push_back(t);
  }
  return out;
}

}  // namespace

std::string_view to_string(OpMix mix) noexcept {
  for (const auto& [m, name] : kMixNames) {
    if (m == mix) return name;
  }
  return "?";
}

std::optional<OpMix> parse_op_mix(std::string_view name) noexcept {
  for (const auto& [m, n] : kMixNames) {
    if (n == name) return m;
  }
  return std::nullopt;
}

std::vector<std::size_t> default_bench_sizes() { return {64, 128, 256, 512, 1024}; }

std::vector<BenchPoint> run_bench(const SdrLayout& layout, const std::vector<std::size_t>& sizes,
                                  OpMix mix, std::size_t iterations, std::uint64_t seed) {
  std::vector<BenchPoint> points;
  if (iterations == 0) return points;

  for (const std::size_t entries : sizes) {
    std::mt19937_64 rng(seed);
    NertcamConfig config;
    config.layout = layout;
    config.capacity = entries;
    Nertcam device(config);

    const auto triplets = distinct_triplets(layout, entries, rng);
    for (const auto& t : triplets) device.run({CommandKind::Store, triplet_sdr(t, layout), 0});

    std::vector<MacroCommand> commands;
    std::vector<std::pair<Sdr, DcMask>> lookups;
    std::uniform_int_distribution<std::size_t> pick(0, entries - 1);
    std::uniform_int_distribution<std::size_t> pick_loc(0, layout.location_bits - 1);
    for (std::size_t i = 0; i < iterations; ++i) {
      const Triplet& t = triplets[pick(rng)];
      switch (mix) {
        case OpMix::Lookup:
          lookups.emplace_back(triplet_sdr(t, layout), DcMask(layout.total()));
          break;
        case OpMix::Infer:
          commands.push_back({CommandKind::Infer, triplet_sdr(t, layout, false), 0});
          break;
        case OpMix::Predict: {
          const Sdr query = make_sdr(SectionVec(layout.feature_bits),
                                     SectionVec::one_hot(layout.location_bits, pick_loc(rng)),
                                     SectionVec(layout.class_bits), layout);
          commands.push_back({CommandKind::PredictFeature, query, 0});
          break;
        }
        case OpMix::StoreDelete:
          commands.push_back({CommandKind::Delete, triplet_sdr(t, layout), 0});
          commands.push_back({CommandKind::Store, triplet_sdr(t, layout), 0});
          break;
      }
    }

    const std::uint64_t cycles_before = device.status().total_cycles;
    Rtcam memory = device.memory();
    const auto start = std::chrono::steady_clock::now();
    if (mix == OpMix::Lookup) {
      for (const auto& [query, dc] : lookups) {
        memory.lookup(query, dc, LookupScope::All, MatchMode::Equality);
      }
    } else {
      for (const auto& cmd : commands) device.run(cmd);
    }
    const auto stop = std::chrono::steady_clock::now();

    BenchPoint p;
    p.entries = entries;
    p.iterations = iterations;
    p.seconds = std::chrono::duration<double>(stop - start).count();
    p.ns_per_op = p.seconds * 1e9 / static_cast<double>(iterations);
    p.ops_per_sec = p.seconds > 0 ? static_cast<double>(iterations) / p.seconds : 0.0;
    p.cycles_per_op = static_cast<double>(device.status().total_cycles - cycles_before) /
                      static_cast<double>(iterations);
    points.push_back(p);
  }
  return points;
}

}  // namespace nertcam
