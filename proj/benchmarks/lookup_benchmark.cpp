#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "nertcam/system.hpp"

namespace {

using namespace nertcam;

// Memory of `entries` distinct triplets at the 128/25/10 layout.
struct Fixture {
  NertcamConfig config;
  Nertcam device;
  std::vector<Sdr> stored;

  explicit Fixture(std::size_t entries) : config(make_config(entries)), device(config) {
    const auto& l = config.layout;
    for (std::size_t i = 0; i < entries; ++i) {
      stored.push_back(make_sdr(SectionVec::one_hot(l.feature_bits, i % l.feature_bits),
                                SectionVec::one_hot(l.location_bits, (i / l.feature_bits) % l.location_bits),
                                SectionVec::one_hot(l.class_bits, i % l.class_bits), l));
      device.run({CommandKind::Store, stored.back(), 0});
    }
  }

  static NertcamConfig make_config(std::size_t entries) {
    NertcamConfig c;
    c.capacity = entries;
    return c;
  }
};

void BM_Lookup(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  Rtcam memory = f.device.memory();
  const DcMask dc(f.config.layout.total());
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    const auto& q = f.stored[rng() % f.stored.size()];
    benchmark::DoNotOptimize(memory.lookup(q, dc, LookupScope::All, MatchMode::Equality));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_Infer(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  const auto& l = f.config.layout;
  std::vector<MacroCommand> queries;
  for (const auto& s : f.stored) {
    auto bits = s.bits();
    bits.assign(l.offset(Section::Class), SectionVec(l.class_bits));
    queries.push_back({CommandKind::Infer, Sdr(bits), 0});
  }
  std::mt19937_64 rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.device.run(queries[rng() % queries.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_PredictFeature(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  const auto& l = f.config.layout;
  std::mt19937_64 rng(3);
  for (auto _ : state) {
    const Sdr q = make_sdr(SectionVec(l.feature_bits),
                           SectionVec::one_hot(l.location_bits, rng() % l.location_bits),
                           SectionVec(l.class_bits), l);
    benchmark::DoNotOptimize(f.device.run({CommandKind::PredictFeature, q, 1}));
  }
  state.SetItemsProcessed(state.iterations());
}

}  // namespace

BENCHMARK(BM_Lookup)->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK(BM_Infer)->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK(BM_PredictFeature)->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK_MAIN();
