#include "nertcam/system.hpp"

#include <stdexcept>

namespace nertcam {

void NertcamConfig::validate() const {
  try {
    layout.validate();
    padding_mode.validate(layout.location_bits);
  } catch (const LayoutError& e) {
    throw ConfigError(e.what());
  }
  if (capacity == 0) throw ConfigError("capacity must be at least 1");
  if (padding_mode.kind == PaddingMode::Kind::Grid2D &&
      (padding_mode.rows == 0 || padding_mode.cols == 0)) {
    throw ConfigError("grid dimensions must be nonzero");
  }
}

namespace {

const NertcamConfig& checked(const NertcamConfig& config) {
  config.validate();
  return config;
}

}  // namespace

Nertcam::Nertcam(NertcamConfig config)
    : config_(checked(config)), memory_(config_.layout, config_.capacity) {}

SubmitStatus Nertcam::submit(const MacroCommand& cmd) {
  if (controller_.busy() || controller_.in_flight()) {
    return {SubmitResult::RejectedBusy, std::nullopt};
  }
  if (auto error = validate_command(cmd, config_.layout, config_.khot_features)) {
    return {SubmitResult::InputError, std::move(error)};
  }

  // CLEAR and RESET discard the input entirely.
  const bool housekeeping = cmd.kind == CommandKind::Clear || cmd.kind == CommandKind::Reset;
  Sdr query = housekeeping ? Sdr(config_.layout.total()) : cmd.input;
  DcMask dc = housekeeping ? DcMask(config_.layout.total())
                           : build_dc(cmd, config_.layout, config_.padding_mode);
  controller_.accept(cmd.kind, std::move(query), std::move(dc));
  return {SubmitResult::Accepted, std::nullopt};
}

CycleReport Nertcam::step() {
  CycleReport report;
  if (!controller_.in_flight()) return report;

  report.idle = false;
  report.record = controller_.step(memory_);
  ++total_cycles_;
  if (observer_) observer_(report.record);
  if (report.record.outcome) report.response = finish(report.record);
  return report;
}

Response Nertcam::finish(const CycleRecord& record) {
  const Outcome outcome = *record.outcome;
  Response response;
  response.status = StatusOut{outcome, controller_.busy(), is_error(outcome), memory_.full()};
  response.cycles = record.cycle;
  response.classes = SectionVec(config_.layout.class_bits);
  response.prediction = empty_prediction(config_.layout);

  if (record.command == CommandKind::Infer &&
      (outcome == Outcome::Success || outcome == Outcome::ContextSwitch)) {
    response.classes = memory_.infer_class_out();
  }
  if (is_predict(record.command)) {
    const auto matched = memory_.mem_out();
    response.prediction = condense(matched, record.command, config_.layout);
  }

  last_outcome_ = outcome;
  return response;
}

Response Nertcam::run(const MacroCommand& cmd) {
  const SubmitStatus submitted = submit(cmd);
  if (submitted.result == SubmitResult::RejectedBusy) {
    Response rejected;
    rejected.status = StatusOut{Outcome::RejectedBusy, true, false, memory_.full()};
    rejected.classes = SectionVec(config_.layout.class_bits);
    rejected.prediction = empty_prediction(config_.layout);
    return rejected;
  }
  if (submitted.result == SubmitResult::InputError) throw InvalidCommand(*submitted.error);

  for (;;) {
    CycleReport report = step();
    if (report.response) return std::move(*report.response);
  }
}

SystemStatus Nertcam::status() const {
  return {controller_.busy(), memory_.full(), last_outcome_, memory_.occupancy(), total_cycles_};
}

void Nertcam::load_image(std::istream& in) {
  if (controller_.busy() || controller_.in_flight()) {
    throw std::logic_error("cannot load a memory image while a command is in flight");
  }
  memory_.load_image(in);
}

}  // namespace nertcam
