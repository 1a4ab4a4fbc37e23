#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nertcam/oracle.hpp"
#include "nertcam/preprocess.hpp"
#include "nertcam/system.hpp"

namespace nertcam {

/// One agent command in a trace file. Sections are given as hot-bit indices;
/// a k-hot feature may instead be given as a bit string.
///
/// Line format (one JSON object per line):
///   {"op":"STORE","feature":3,"location":7,"class":2}
///   {"op":"PREDICT_FEATURE","location":12,"padding":1}
///   {"op":"INFER","feature":"0110...","location":4}
struct TraceRecord {
  CommandKind op = CommandKind::Reset;
  std::optional<std::size_t> feature;
  std::optional<std::string> feature_bits;
  std::optional<std::size_t> location;
  std::optional<std::size_t> class_index;
  std::optional<std::size_t> padding;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

nlohmann::json to_json(const TraceRecord& record);
/// Throws ParseError (line 0) on a malformed object.
TraceRecord trace_record_from_json(const nlohmann::json& j);

/// Reads a JSON-lines trace. Blank lines and lines starting with '#' are
/// skipped. Indices are checked against `layout`; violations throw ParseError
/// carrying the line number.
std::vector<TraceRecord> read_trace(std::istream& in, const SdrLayout& layout);
std::vector<TraceRecord> read_trace_file(const std::string& path, const SdrLayout& layout);
void write_trace(std::ostream& out, const std::vector<TraceRecord>& trace);

/// Builds the device command. Sections the record omits are all-zero, so a
/// record with the wrong fields for its op becomes an input error at submit.
/// `default_padding` applies to PREDICT_FEATURE records that carry none.
MacroCommand to_macro_command(const TraceRecord& record, const SdrLayout& layout,
                              std::size_t default_padding = 0);

golden::Command to_golden_command(const TraceRecord& record, std::size_t default_padding = 0);
golden::Geometry golden_geometry(const NertcamConfig& config);

/// Hot feature indices of a record (index or bit string).
std::vector<std::size_t> feature_indices(const TraceRecord& record);

// Config file: a JSON object
//   {"layout":{"feature":128,"location":25,"class":10},"entries":1024,
//    "padding_mode":{"kind":"grid2d","rows":5,"cols":5},"khot_features":false}
// Every key is optional; missing keys keep the defaults.

NertcamConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const NertcamConfig& config);
NertcamConfig read_config_file(const std::string& path);

}  // namespace nertcam
