#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>

#include "nertcam/prediction_map.hpp"
#include "nertcam/preprocess.hpp"
#include "nertcam/rtcam.hpp"
#include "nertcam/state_machine.hpp"

namespace nertcam {

struct NertcamConfig {
  SdrLayout layout = SdrLayout::mnist_scale();
  std::size_t capacity = 1024;
  PaddingMode padding_mode = PaddingMode::linear();
  bool khot_features = false;

  /// Throws ConfigError when any invariant fails.
  void validate() const;

  friend bool operator==(const NertcamConfig&, const NertcamConfig&) = default;
};

/// Result of one completed (or rejected) command.
struct Response {
  StatusOut status;
  /// k-hot valid classes after INFER (Success or Context_Switch); zero otherwise.
  SectionVec classes;
  /// Populated for PREDICT; zero otherwise.
  PredictionOutput prediction;
  std::uint64_t cycles = 0;

  Outcome outcome() const noexcept { return status.outcome; }

  friend bool operator==(const Response&, const Response&) = default;
};

enum class SubmitResult { Accepted, RejectedBusy, InputError };

struct SubmitStatus {
  SubmitResult result = SubmitResult::Accepted;
  std::optional<InputError> error;

  bool accepted() const noexcept { return result == SubmitResult::Accepted; }
};

/// What one clock cycle did. `idle` is set when no command was in flight.
struct CycleReport {
  bool idle = true;
  CycleRecord record;
  std::optional<Response> response;
};

struct SystemStatus {
  bool busy = false;
  bool full = false;
  std::optional<Outcome> last_outcome;
  /// Non-empty rows. Instrumentation only; not a device output.
  std::size_t occupancy = 0;
  std::uint64_t total_cycles = 0;
};

/// Reference-frame memory device: preprocess, RTCAM array, controller and
/// prediction map behind a submit/step interface. One instance is one
/// device; callers serialize access.
class Nertcam {
 public:
  using CycleObserver = std::function<void(const CycleRecord&)>;

  /// Starts cleared, idle, with the cycle counter at zero.
  explicit Nertcam(NertcamConfig config);

  const NertcamConfig& config() const noexcept { return config_; }

  /// Validates and latches a command. Preprocessing is combinational and
  /// costs no cycle; memory is untouched until step().
  SubmitStatus submit(const MacroCommand& cmd);

  /// Advances one clock cycle. A no-op report when idle.
  CycleReport step();

  /// submit() then step() until the command completes. Returns a
  /// RejectedBusy response if a command is already in flight; throws
  /// InvalidCommand if the input is malformed.
  Response run(const MacroCommand& cmd);

  SystemStatus status() const;

  const Rtcam& memory() const noexcept { return memory_; }

  /// Replaces memory contents from an image. Only allowed while idle.
  void load_image(std::istream& in);
  void save_image(std::ostream& out) const { memory_.save_image(out); }

  /// Receives every cycle record (for cycle traces).
  void set_cycle_observer(CycleObserver observer) { observer_ = std::move(observer); }

  /// Direct row access for fault-injection fixtures.
  Rtcam& mutable_memory() noexcept { return memory_; }

 private:
  Response finish(const CycleRecord& record);

  NertcamConfig config_;
  Rtcam memory_;
  Controller controller_;
  std::optional<Outcome> last_outcome_;
  std::uint64_t total_cycles_ = 0;
  CycleObserver observer_;
};

}  // namespace nertcam
