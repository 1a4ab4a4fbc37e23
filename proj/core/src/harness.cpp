#include "nertcam/harness.hpp"

#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace nertcam {

using nlohmann::json;

namespace {

std::string join_indices(const std::vector<std::size_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::size_t pick(std::mt19937_64& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

}  // namespace

// ---------------------------------------------------------------------------
// Replay

bool RunReport::has_input_error() const {
  for (const auto& r : records) {
    if (r.outcome == kInputErrorOutcome) return true;
  }
  return false;
}

RecordResult make_record_result(std::size_t seq, const TraceRecord& record,
                                const Response& response) {
  RecordResult r;
  r.seq = seq;
  r.record = record;
  r.outcome = std::string(to_string(response.outcome()));
  r.full = response.status.full;
  r.classes = response.classes.set_positions();
  r.predicted_features = response.prediction.features.set_positions();
  r.predicted_locations = response.prediction.locations.set_positions();
  r.predicted_classes = response.prediction.classes.set_positions();
  r.cycles = response.cycles;
  return r;
}

void SummaryTracker::observe(const RecordResult& result) {
  summary_.total_cycles += result.cycles;
  const auto outcome = parse_outcome(result.outcome);
  if (!outcome || is_error(*outcome) || *outcome == Outcome::RejectedBusy) {
    ++summary_.errors_by_kind[result.outcome];
  }
  if (!outcome || *outcome == Outcome::RejectedBusy) return;

  switch (result.record.op) {
    case CommandKind::Clear:
    case CommandKind::Reset:
    case CommandKind::Store:
    case CommandKind::Delete:
      // All four leave every valid bit set: a fresh identification starts.
      sensations_ = 0;
      open_ = true;
      break;
    case CommandKind::Infer:
      if (*outcome == Outcome::InferFailed) {
        sensations_ = 0;
        open_ = true;
        break;
      }
      if (*outcome == Outcome::ContextSwitch) {
        ++summary_.context_switches;
        sensations_ = 0;
        open_ = true;
      }
      ++sensations_;
      if (open_ && result.classes.size() == 1) {
        ++summary_.identifications;
        sensation_total_ += sensations_;
        open_ = false;
      }
      break;
    case CommandKind::PredictFeature:
    case CommandKind::PredictLocation:
      break;
  }
}

RunSummary SummaryTracker::summary() const {
  RunSummary s = summary_;
  s.mean_sensations_to_one_hot =
      s.identifications == 0 ? 0.0
                             : static_cast<double>(sensation_total_) /
                                   static_cast<double>(s.identifications);
  return s;
}

RunReport replay(Nertcam& device, const std::vector<TraceRecord>& trace,
                 std::size_t default_padding) {
  RunReport report;
  SummaryTracker tracker;
  report.records.reserve(trace.size());
  const auto& layout = device.config().layout;
  for (std::size_t seq = 0; seq < trace.size(); ++seq) {
    const auto& record = trace[seq];
    RecordResult result;
    try {
      const Response response = device.run(to_macro_command(record, layout, default_padding));
      result = make_record_result(seq, record, response);
    } catch (const InvalidCommand& e) {
      result.seq = seq;
      result.record = record;
      result.outcome = std::string(kInputErrorOutcome);
      result.error = e.what();
    }
    tracker.observe(result);
    report.records.push_back(std::move(result));
  }
  report.summary = tracker.summary();
  return report;
}

void write_report(std::ostream& out, const RunReport& report) {
  for (const auto& r : report.records) {
    json j;
    j["seq"] = r.seq;
    j["command"] = to_json(r.record);
    j["outcome"] = r.outcome;
    if (r.error) j["error"] = *r.error;
    j["full"] = r.full;
    j["classes"] = r.classes;
    j["pred_features"] = r.predicted_features;
    j["pred_locations"] = r.predicted_locations;
    j["pred_classes"] = r.predicted_classes;
    j["cycles"] = r.cycles;
    out << j.dump() << '\n';
  }
  const auto& s = report.summary;
  json summary;
  summary["total_cycles"] = s.total_cycles;
  summary["identifications"] = s.identifications;
  summary["mean_sensations_to_one_hot"] = s.mean_sensations_to_one_hot;
  summary["context_switches"] = s.context_switches;
  summary["errors_by_kind"] = s.errors_by_kind;
  summary["records"] = report.records.size();
  out << json{{"summary", summary}}.dump() << '\n';
}

RunReport read_report(std::istream& in) {
  RunReport report;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (j.contains("summary")) {
        const auto& s = j.at("summary");
        report.summary.total_cycles = s.at("total_cycles").get<std::uint64_t>();
        report.summary.identifications = s.at("identifications").get<std::size_t>();
        report.summary.mean_sensations_to_one_hot = s.at("mean_sensations_to_one_hot").get<double>();
        report.summary.context_switches = s.at("context_switches").get<std::size_t>();
        report.summary.errors_by_kind =
            s.at("errors_by_kind").get<std::map<std::string, std::size_t>>();
        continue;
      }
      RecordResult r;
      r.seq = j.at("seq").get<std::size_t>();
      r.record = trace_record_from_json(j.at("command"));
      r.outcome = j.at("outcome").get<std::string>();
      if (j.contains("error")) r.error = j.at("error").get<std::string>();
      r.full = j.at("full").get<bool>();
      r.classes = j.at("classes").get<std::vector<std::size_t>>();
      r.predicted_features = j.at("pred_features").get<std::vector<std::size_t>>();
      r.predicted_locations = j.at("pred_locations").get<std::vector<std::size_t>>();
      r.predicted_classes = j.at("pred_classes").get<std::vector<std::size_t>>();
      r.cycles = j.at("cycles").get<std::uint64_t>();
      report.records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(line_no, e.what());
    } catch (const ParseError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return report;
}

std::vector<TraceRecord> trace_from_report(const RunReport& report) {
  std::vector<TraceRecord> out;
  out.reserve(report.records.size());
  for (const auto& r : report.records) out.push_back(r.record);
  return out;
}

// ---------------------------------------------------------------------------
// Differential testing

DiffReport diff(Nertcam& device, golden::GoldenModel& golden,
                const std::vector<TraceRecord>& trace, std::size_t default_padding) {
  DiffReport report;
  const auto& layout = device.config().layout;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& record = trace[i];
    Response got;
    try {
      got = device.run(to_macro_command(record, layout, default_padding));
    } catch (const InvalidCommand&) {
      continue;
    }
    const golden::Response want = golden.apply(to_golden_command(record, default_padding));
    ++report.records_checked;

    auto mismatch = [&](const char* field, std::string device_value, std::string golden_value) {
      report.first = Divergence{i, field, std::move(device_value), std::move(golden_value)};
    };
    if (got.outcome() != want.outcome) {
      mismatch("outcome", std::string(to_string(got.outcome())),
               std::string(to_string(want.outcome)));
    } else if (got.status.full != want.full) {
      mismatch("full", got.status.full ? "1" : "0", want.full ? "1" : "0");
    } else if (got.classes.set_positions() != want.classes) {
      mismatch("classes", join_indices(got.classes.set_positions()), join_indices(want.classes));
    } else if (got.prediction.features.set_positions() != want.predicted_features) {
      mismatch("pred_features", join_indices(got.prediction.features.set_positions()),
               join_indices(want.predicted_features));
    } else if (got.prediction.locations.set_positions() != want.predicted_locations) {
      mismatch("pred_locations", join_indices(got.prediction.locations.set_positions()),
               join_indices(want.predicted_locations));
    } else if (got.prediction.classes.set_positions() != want.predicted_classes) {
      mismatch("pred_classes", join_indices(got.prediction.classes.set_positions()),
               join_indices(want.predicted_classes));
    }
    if (report.first) break;
  }
  return report;
}

DiffReport diff(const NertcamConfig& config, const std::vector<TraceRecord>& trace,
                std::size_t default_padding) {
  Nertcam device(config);
  golden::GoldenModel golden(golden_geometry(config));
  return diff(device, golden, trace, default_padding);
}

std::vector<TraceRecord> fuzz_trace(const NertcamConfig& config, const FuzzParams& params) {
  config.validate();
  std::mt19937_64 rng(params.seed);
  const auto& layout = config.layout;

  // Features in k-hot mode come from a small pool so exact-equality hits recur.
  const std::size_t khot_pool = std::min<std::size_t>(layout.feature_bits, 6);
  auto random_feature = [&](TraceRecord& r) {
    if (!config.khot_features) {
      r.feature = pick(rng, layout.feature_bits);
      return;
    }
    std::string bits(layout.feature_bits, '0');
    const std::size_t hot = 1 + pick(rng, std::min<std::size_t>(3, khot_pool));
    for (std::size_t k = 0; k < hot; ++k) bits[pick(rng, khot_pool)] = '1';
    r.feature_bits = bits;
  };

  std::vector<TraceRecord> stored;
  auto recall = [&]() -> const TraceRecord& { return stored[pick(rng, stored.size())]; };

  std::vector<TraceRecord> out;
  out.reserve(params.ops);
  for (std::size_t i = 0; i < params.ops; ++i) {
    TraceRecord r;
    const std::size_t roll = pick(rng, 100);
    if (roll < 30) {
      r.op = CommandKind::Store;
      if (!stored.empty() && pick(rng, 5) == 0) {
        r = recall();
      } else {
        random_feature(r);
        r.location = pick(rng, layout.location_bits);
        r.class_index = pick(rng, layout.class_bits);
        stored.push_back(r);
      }
    } else if (roll < 40) {
      r.op = CommandKind::Delete;
      if (!stored.empty() && pick(rng, 3) != 0) {
        r = recall();
        r.op = CommandKind::Delete;
      } else {
        random_feature(r);
        r.location = pick(rng, layout.location_bits);
        r.class_index = pick(rng, layout.class_bits);
      }
    } else if (roll < 72) {
      r.op = CommandKind::Infer;
      if (!stored.empty() && pick(rng, 4) != 0) {
        const auto& s = recall();
        r.feature = s.feature;
        r.feature_bits = s.feature_bits;
        r.location = s.location;
      } else {
        random_feature(r);
        r.location = pick(rng, layout.location_bits);
      }
    } else if (roll < 82) {
      r.op = CommandKind::PredictFeature;
      r.location = pick(rng, layout.location_bits);
      r.padding = pick(rng, params.max_padding + 1);
    } else if (roll < 90) {
      r.op = CommandKind::PredictLocation;
      if (!stored.empty() && pick(rng, 2) == 0) {
        const auto& s = recall();
        r.feature = s.feature;
        r.feature_bits = s.feature_bits;
      } else {
        random_feature(r);
      }
    } else if (roll < 99 || pick(rng, config.capacity / 8 + 1) != 0) {
      r.op = CommandKind::Reset;
    } else {
      r.op = CommandKind::Clear;
      stored.clear();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace nertcam
