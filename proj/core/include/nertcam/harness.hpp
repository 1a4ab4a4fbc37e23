#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nertcam/oracle.hpp"
#include "nertcam/system.hpp"
#include "nertcam/trace.hpp"

namespace nertcam {

// ---------------------------------------------------------------------------
// Replay

/// Outcome of one trace record. `outcome` is an Outcome name, or
/// "Input_Error" when the record was rejected at submit.
struct RecordResult {
  std::size_t seq = 0;
  TraceRecord record;
  std::string outcome;
  std::optional<std::string> error;
  bool full = false;
  std::vector<std::size_t> classes;
  std::vector<std::size_t> predicted_features;
  std::vector<std::size_t> predicted_locations;
  std::vector<std::size_t> predicted_classes;
  std::uint64_t cycles = 0;

  friend bool operator==(const RecordResult&, const RecordResult&) = default;
};

struct RunSummary {
  std::uint64_t total_cycles = 0;
  /// INFER episodes that narrowed to exactly one class.
  std::size_t identifications = 0;
  /// Mean number of INFERs per completed identification (0 when none).
  double mean_sensations_to_one_hot = 0.0;
  std::size_t context_switches = 0;
  std::map<std::string, std::size_t> errors_by_kind;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

struct RunReport {
  std::vector<RecordResult> records;
  RunSummary summary;

  bool has_input_error() const;
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline constexpr std::string_view kInputErrorOutcome = "Input_Error";

/// Replays a trace through `device`. Records rejected at submit are reported
/// as Input_Error and the run continues.
RunReport replay(Nertcam& device, const std::vector<TraceRecord>& trace,
                 std::size_t default_padding = 0);

/// Same summary accounting, fed one record at a time.
class SummaryTracker {
 public:
  void observe(const RecordResult& result);
  RunSummary summary() const;

 private:
  RunSummary summary_;
  std::size_t sensations_ = 0;
  bool open_ = true;
  std::uint64_t sensation_total_ = 0;
};

RecordResult make_record_result(std::size_t seq, const TraceRecord& record,
                                const Response& response);

/// JSON lines: one object per record, then {"summary":{...}}.
void write_report(std::ostream& out, const RunReport& report);
RunReport read_report(std::istream& in);
/// Reconstructs the command stream a report was produced from.
std::vector<TraceRecord> trace_from_report(const RunReport& report);

// ---------------------------------------------------------------------------
// Differential testing against the golden model

struct Divergence {
  std::size_t record = 0;
  std::string field;
  std::string device_value;
  std::string golden_value;
};

struct DiffReport {
  std::size_t records_checked = 0;
  std::optional<Divergence> first;

  bool clean() const noexcept { return !first.has_value(); }
};

/// Runs both models in lockstep and stops at the first disagreement in
/// outcome, full flag, class output or prediction. Records the device rejects
/// at submit are skipped on both sides.
DiffReport diff(Nertcam& device, golden::GoldenModel& golden, const std::vector<TraceRecord>& trace,
                std::size_t default_padding = 0);
DiffReport diff(const NertcamConfig& config, const std::vector<TraceRecord>& trace,
                std::size_t default_padding = 0);

struct FuzzParams {
  std::size_t ops = 10000;
  std::uint64_t seed = 1;
  std::size_t max_padding = 2;
};

/// Random well-formed command stream. Index ranges are kept small relative to
/// capacity so duplicates, misses, context switches and full memory all occur.
std::vector<TraceRecord> fuzz_trace(const NertcamConfig& config, const FuzzParams& params);

}  // namespace nertcam
