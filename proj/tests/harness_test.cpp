#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "nertcam/bench.hpp"
#include "nertcam/dataset.hpp"
#include "nertcam/harness.hpp"

namespace nertcam {
namespace {

NertcamConfig cfg(SdrLayout layout, std::size_t capacity) {
  NertcamConfig c;
  c.layout = layout;
  c.capacity = capacity;
  return c;
}

TraceRecord rec(CommandKind op, std::optional<std::size_t> f, std::optional<std::size_t> l,
                std::optional<std::size_t> c = std::nullopt) {
  TraceRecord r;
  r.op = op;
  r.feature = f;
  r.location = l;
  r.class_index = c;
  return r;
}

TEST(Trace, ReadWriteRoundTrip) {
  std::vector<TraceRecord> trace{
      rec(CommandKind::Store, 3, 7, 2),
      rec(CommandKind::Infer, 3, 7),
      rec(CommandKind::Reset, std::nullopt, std::nullopt),
  };
  TraceRecord pf = rec(CommandKind::PredictFeature, std::nullopt, 4);
  pf.padding = 2;
  trace.push_back(pf);
  TraceRecord kh;
  kh.op = CommandKind::PredictLocation;
  kh.feature_bits = "0110000000";
  trace.push_back(kh);

  std::stringstream s;
  write_trace(s, trace);
  EXPECT_EQ(read_trace(s, {10, 10, 4}), trace);
}

TEST(Trace, ErrorsCarryLineNumbers) {
  const SdrLayout layout{4, 4, 4};
  auto line_of = [&](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_trace(in, layout);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("# header\n{\"op\":\"RESET\"}\nnot json\n"), 3u);
  EXPECT_EQ(line_of("{\"op\":\"RESET\"}\n\n{\"op\":\"FLY\"}\n"), 3u);
  EXPECT_EQ(line_of("{\"op\":\"STORE\",\"feature\":4,\"location\":0,\"class\":0}\n"), 1u);
  EXPECT_EQ(line_of("{\"op\":\"INFER\",\"feature\":\"01\",\"location\":0}\n"), 1u);
  EXPECT_EQ(line_of("{\"op\":\"INFER\",\"feature\":-1,\"location\":0}\n"), 1u);
  EXPECT_EQ(line_of("{\"op\":\"RESET\"}\n"), 0u);
}

TEST(Trace, ConfigJsonRoundTrip) {
  NertcamConfig c = cfg({16, 9, 3}, 33);
  c.padding_mode = PaddingMode::grid(3, 3);
  c.khot_features = true;
  EXPECT_EQ(config_from_json(to_json(c)), c);
  EXPECT_EQ(config_from_json(nlohmann::json::object()), NertcamConfig{});
}

TEST(Replay, DuplicateStoreAndInputErrors) {
  Nertcam d(cfg({4, 4, 4}, 8));
  const std::vector<TraceRecord> trace{
      rec(CommandKind::Store, 1, 1, 1),
      rec(CommandKind::Store, 1, 1, 1),
      rec(CommandKind::Infer, 1, std::nullopt),
      rec(CommandKind::Infer, 1, 1),
  };
  const auto report = replay(d, trace);
  ASSERT_EQ(report.records.size(), 4u);
  EXPECT_EQ(report.records[0].outcome, "Success");
  EXPECT_EQ(report.records[0].cycles, 3u);
  EXPECT_EQ(report.records[1].outcome, "Store_Failed");
  EXPECT_EQ(report.records[2].outcome, kInputErrorOutcome);
  EXPECT_TRUE(report.records[2].error);
  EXPECT_EQ(report.records[3].classes, (std::vector<std::size_t>{1}));
  EXPECT_TRUE(report.has_input_error());
  EXPECT_EQ(report.summary.total_cycles, 3u + 2u + 2u);
  EXPECT_EQ(report.summary.identifications, 1u);
  EXPECT_DOUBLE_EQ(report.summary.mean_sensations_to_one_hot, 1.0);
  EXPECT_EQ(report.summary.errors_by_kind.at("Store_Failed"), 1u);
  EXPECT_EQ(report.summary.errors_by_kind.at(std::string(kInputErrorOutcome)), 1u);
}

TEST(Replay, EmptyTrace) {
  Nertcam d(cfg({4, 4, 4}, 8));
  const auto report = replay(d, {});
  EXPECT_TRUE(report.records.empty());
  EXPECT_EQ(report.summary, RunSummary{});
}

TEST(Report, RoundTripAndTraceReconstruction) {
  const auto config = cfg({4, 4, 4}, 8);
  const auto trace = fuzz_trace(config, {300, 4, 2});
  Nertcam d(config);
  const auto report = replay(d, trace);
  std::stringstream s;
  write_report(s, report);
  const auto back = read_report(s);
  EXPECT_EQ(back.records, report.records);
  EXPECT_EQ(back.summary.total_cycles, report.summary.total_cycles);
  EXPECT_EQ(back.summary.identifications, report.summary.identifications);
  EXPECT_EQ(back.summary.context_switches, report.summary.context_switches);
  EXPECT_NEAR(back.summary.mean_sensations_to_one_hot, report.summary.mean_sensations_to_one_hot,
              1e-9);
  EXPECT_EQ(trace_from_report(back), trace);

  Nertcam again(config);
  EXPECT_EQ(replay(again, trace_from_report(back)).records, report.records);
}

TEST(Dataset, CountsAndUniqueness) {
  DatasetParams p;
  auto ds = generate_dataset(p);
  EXPECT_EQ(store_trace(ds).size(), 250u);
  p.samples_per_class = 20;
  ds = generate_dataset(p);
  const auto stores = store_trace(ds);
  ASSERT_EQ(stores.size(), 5000u);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> distinct;
  for (const auto& r : stores) distinct.emplace(*r.feature, *r.location, *r.class_index);
  EXPECT_EQ(distinct.size(), 5000u);

  std::set<std::vector<std::size_t>> maps;
  for (const auto& per_class : ds.maps) {
    for (const auto& m : per_class) maps.insert(m);
  }
  EXPECT_EQ(maps.size(), 200u);
}

TEST(Dataset, SeedReproducibility) {
  DatasetParams p;
  p.order = SensationOrder::Random;
  p.seed = 77;
  const auto a = generate_dataset(p);
  const auto b = generate_dataset(p);
  EXPECT_EQ(a.maps, b.maps);
  EXPECT_EQ(infer_trace(a), infer_trace(b));
  p.seed = 78;
  EXPECT_NE(generate_dataset(p).maps, a.maps);
}

TEST(Dataset, RejectsImpossibleParameters) {
  DatasetParams p;
  p.feature_pool = 200;
  EXPECT_THROW(generate_dataset(p), std::invalid_argument);
  p = DatasetParams{};
  p.feature_pool = 2;
  p.samples_per_class = 5;
  EXPECT_THROW(generate_dataset(p), std::invalid_argument);
}

TEST(Dataset, FilesReplayToIdentifications) {
  const auto dir = std::filesystem::temp_directory_path() / "nertcam_dataset_test";
  std::filesystem::remove_all(dir);
  const auto ds = generate_dataset(DatasetParams{});
  write_dataset_files(dir.string(), ds, 256);
  const auto config = read_config_file((dir / "config.json").string());
  EXPECT_EQ(config.capacity, 256u);
  EXPECT_EQ(config.padding_mode.kind, PaddingMode::Kind::Grid2D);
  auto trace = read_trace_file((dir / "store.jsonl").string(), config.layout);
  const auto infers = read_trace_file((dir / "infer.jsonl").string(), config.layout);
  trace.insert(trace.end(), infers.begin(), infers.end());
  Nertcam d(config);
  const auto report = replay(d, trace);
  EXPECT_FALSE(report.has_input_error());
  EXPECT_EQ(report.summary.identifications, 10u);
  std::filesystem::remove_all(dir);
}

TEST(Diff, FuzzIsCleanAndCoversEveryOutcome) {
  for (const auto& [layout, capacity] :
       std::vector<std::pair<SdrLayout, std::size_t>>{{{4, 4, 4}, 16}, {{8, 8, 8}, 64}}) {
    const auto config = cfg(layout, capacity);
    const auto trace = fuzz_trace(config, {4000, 3, 2});
    Nertcam device(config);
    golden::GoldenModel golden(golden_geometry(config));
    const auto result = diff(device, golden, trace);
    EXPECT_TRUE(result.clean()) << result.first->record << " " << result.first->field;
    EXPECT_EQ(result.records_checked, trace.size());

    Nertcam d(config);
    const auto report = replay(d, trace);
    std::set<std::string> outcomes;
    bool saw_full_failure = false;
    for (const auto& r : report.records) {
      outcomes.insert(r.outcome);
      if (r.outcome == "Store_Failed" && r.full) saw_full_failure = true;
    }
    for (const char* o : {"Success", "Store_Failed", "Delete_Failed", "Infer_Failed", "Context_Switch"}) {
      EXPECT_TRUE(outcomes.contains(o)) << o;
    }
    EXPECT_TRUE(saw_full_failure);
  }
}

TEST(Diff, GridAndKHotFuzzIsClean) {
  NertcamConfig c = cfg({6, 9, 4}, 24);
  c.padding_mode = PaddingMode::grid(3, 3);
  c.khot_features = true;
  const auto result = diff(c, fuzz_trace(c, {3000, 8, 2}));
  EXPECT_TRUE(result.clean());
}

TEST(Diff, CorruptedRowIsReportedAtFirstAffectedRecord) {
  const auto config = cfg({4, 4, 4}, 8);
  Nertcam device(config);
  golden::GoldenModel golden(golden_geometry(config));
  const std::vector<TraceRecord> setup{rec(CommandKind::Store, 0, 0, 0),
                                       rec(CommandKind::Store, 1, 1, 1)};
  ASSERT_TRUE(diff(device, golden, setup).clean());

  // Flip row 1's location from 1 to 2 behind both models' backs.
  const auto& layout = config.layout;
  device.mutable_memory().overwrite_row(
      1,
      make_sdr(BitVector::one_hot(4, 1), BitVector::one_hot(4, 2), BitVector::one_hot(4, 1), layout),
      true, false);

  const std::vector<TraceRecord> probe{
      rec(CommandKind::Infer, 0, 0),
      rec(CommandKind::Reset, std::nullopt, std::nullopt),
      rec(CommandKind::PredictLocation, 3, std::nullopt),
      rec(CommandKind::Infer, 1, 1),
      rec(CommandKind::Infer, 0, 0),
  };
  const auto result = diff(device, golden, probe);
  ASSERT_FALSE(result.clean());
  EXPECT_EQ(result.first->record, 3u);
  EXPECT_EQ(result.first->field, "outcome");
  EXPECT_EQ(result.first->device_value, "Infer_Failed");
  EXPECT_EQ(result.first->golden_value, "Success");
}

TEST(Bench, ZeroIterationsAndSizes) {
  EXPECT_TRUE(run_bench({8, 8, 8}, {16, 32}, OpMix::Lookup, 0).empty());
  const auto points = run_bench({8, 8, 8}, {16, 32}, OpMix::Infer, 50);
  ASSERT_EQ(points.size(), 2u);
  EXPECT_EQ(points[1].entries, 32u);
  EXPECT_EQ(points[0].iterations, 50u);
  EXPECT_GT(points[0].cycles_per_op, 0.0);
  EXPECT_THROW(run_bench({2, 2, 2}, {16}, OpMix::Lookup, 10), std::invalid_argument);
  EXPECT_EQ(parse_op_mix("store-delete"), OpMix::StoreDelete);
  EXPECT_FALSE(parse_op_mix("nope"));
}

}  // namespace
}  // namespace nertcam
