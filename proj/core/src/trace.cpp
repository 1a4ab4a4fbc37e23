#include "nertcam/trace.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace nertcam {

using nlohmann::json;

namespace {

std::optional<std::size_t> optional_index(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) {
    throw ParseError(0, std::string("\"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

void check_index(std::size_t line, const char* what, std::optional<std::size_t> index,
                 std::size_t width) {
  if (index && *index >= width) {
    throw ParseError(line, std::string(what) + " index " + std::to_string(*index) +
                               " out of range for width " + std::to_string(width));
  }
}

}  // namespace

json to_json(const TraceRecord& record) {
  json j;
  j["op"] = std::string(to_string(record.op));
  if (record.feature) j["feature"] = *record.feature;
  if (record.feature_bits) j["feature"] = *record.feature_bits;
  if (record.location) j["location"] = *record.location;
  if (record.class_index) j["class"] = *record.class_index;
  if (record.padding) j["padding"] = *record.padding;
  return j;
}

TraceRecord trace_record_from_json(const json& j) {
  if (!j.is_object()) throw ParseError(0, "trace record must be a JSON object");
  if (!j.contains("op") || !j.at("op").is_string()) throw ParseError(0, "missing \"op\"");

  TraceRecord r;
  const auto op_name = j.at("op").get<std::string>();
  const auto op = parse_command_kind(op_name);
  if (!op) throw ParseError(0, "unknown op \"" + op_name + "\"");
  r.op = *op;

  if (j.contains("feature") && j.at("feature").is_string()) {
    r.feature_bits = j.at("feature").get<std::string>();
    if (r.feature_bits->find_first_not_of("01") != std::string::npos) {
      throw ParseError(0, "feature bit string may only contain 0 and 1");
    }
  } else {
    r.feature = optional_index(j, "feature");
  }
  r.location = optional_index(j, "location");
  r.class_index = optional_index(j, "class");
  r.padding = optional_index(j, "padding");
  return r;
}

std::vector<TraceRecord> read_trace(std::istream& in, const SdrLayout& layout) {
  std::vector<TraceRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    TraceRecord r;
    try {
      r = trace_record_from_json(json::parse(line));
    } catch (const json::exception& e) {
      throw ParseError(line_no, e.what());
    } catch (const ParseError& e) {
      throw ParseError(line_no, e.what());
    }
    check_index(line_no, "feature", r.feature, layout.feature_bits);
    check_index(line_no, "location", r.location, layout.location_bits);
    check_index(line_no, "class", r.class_index, layout.class_bits);
    if (r.feature_bits && r.feature_bits->size() != layout.feature_bits) {
      throw ParseError(line_no, "feature bit string has " +
                                    std::to_string(r.feature_bits->size()) + " bits, layout needs " +
                                    std::to_string(layout.feature_bits));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TraceRecord> read_trace_file(const std::string& path, const SdrLayout& layout) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open trace file " + path);
  return read_trace(in, layout);
}

void write_trace(std::ostream& out, const std::vector<TraceRecord>& trace) {
  for (const auto& r : trace) out << to_json(r).dump() << '\n';
}

std::vector<std::size_t> feature_indices(const TraceRecord& record) {
  if (record.feature) return {*record.feature};
  std::vector<std::size_t> out;
  if (record.feature_bits) {
    for (std::size_t i = 0; i < record.feature_bits->size(); ++i) {
      if ((*record.feature_bits)[i] == '1') out.push_back(i);
    }
  }
  return out;
}

MacroCommand to_macro_command(const TraceRecord& record, const SdrLayout& layout,
                              std::size_t default_padding) {
  SectionVec feature(layout.feature_bits);
  for (const std::size_t i : feature_indices(record)) feature.set(i);
  SectionVec location(layout.location_bits);
  if (record.location) location.set(*record.location);
  SectionVec class_bits(layout.class_bits);
  if (record.class_index) class_bits.set(*record.class_index);

  MacroCommand cmd;
  cmd.kind = record.op;
  cmd.input = make_sdr(feature, location, class_bits, layout);
  cmd.padding = record.padding.value_or(record.op == CommandKind::PredictFeature ? default_padding
                                                                                 : 0);
  return cmd;
}

golden::Command to_golden_command(const TraceRecord& record, std::size_t default_padding) {
  golden::Command cmd;
  cmd.kind = record.op;
  cmd.features = feature_indices(record);
  cmd.location = record.location;
  cmd.class_index = record.class_index;
  cmd.padding = record.padding.value_or(record.op == CommandKind::PredictFeature ? default_padding
                                                                                 : 0);
  return cmd;
}

golden::Geometry golden_geometry(const NertcamConfig& config) {
  golden::Geometry g;
  g.feature_count = config.layout.feature_bits;
  g.location_count = config.layout.location_bits;
  g.class_count = config.layout.class_bits;
  g.grid_cols = config.padding_mode.kind == PaddingMode::Kind::Grid2D ? config.padding_mode.cols : 0;
  g.capacity = config.capacity;
  return g;
}

NertcamConfig config_from_json(const json& j) {
  NertcamConfig c;
  try {
    if (j.contains("layout")) {
      const auto& l = j.at("layout");
      c.layout.feature_bits = l.value("feature", c.layout.feature_bits);
      c.layout.location_bits = l.value("location", c.layout.location_bits);
      c.layout.class_bits = l.value("class", c.layout.class_bits);
    }
    c.capacity = j.value("entries", c.capacity);
    if (j.contains("padding_mode")) {
      const auto& p = j.at("padding_mode");
      const auto kind = p.value("kind", std::string("linear"));
      if (kind == "linear") {
        c.padding_mode = PaddingMode::linear();
      } else if (kind == "grid2d") {
        c.padding_mode = PaddingMode::grid(p.at("rows").get<std::size_t>(),
                                           p.at("cols").get<std::size_t>());
      } else {
        throw ParseError(0, "unknown padding_mode kind \"" + kind + "\"");
      }
    }
    c.khot_features = j.value("khot_features", c.khot_features);
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("config: ") + e.what());
  }
  return c;
}

json to_json(const NertcamConfig& config) {
  json j;
  j["layout"] = {{"feature", config.layout.feature_bits},
                 {"location", config.layout.location_bits},
                 {"class", config.layout.class_bits}};
  j["entries"] = config.capacity;
  if (config.padding_mode.kind == PaddingMode::Kind::Grid2D) {
    j["padding_mode"] = {{"kind", "grid2d"},
                         {"rows", config.padding_mode.rows},
                         {"cols", config.padding_mode.cols}};
  } else {
    j["padding_mode"] = {{"kind", "linear"}};
  }
  j["khot_features"] = config.khot_features;
  return j;
}

NertcamConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open config file " + path);
  try {
    return config_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw ParseError(0, "config " + path + ": " + e.what());
  }
}

}  // namespace nertcam
