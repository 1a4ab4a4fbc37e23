#pragma once

#include <optional>
#include <string_view>

namespace nertcam {

/// Agent commands. PREDICT comes in a feature and a location variant.
enum class CommandKind {
  Clear,
  Reset,
  Store,
  Delete,
  Infer,
  PredictFeature,
  PredictLocation,
};

/// Per-command outcome reported to the agent.
enum class Outcome {
  Success,
  StoreFailed,
  DeleteFailed,
  InferFailed,
  ContextSwitch,
  RejectedBusy,
};

std::string_view to_string(CommandKind kind) noexcept;
std::optional<CommandKind> parse_command_kind(std::string_view name) noexcept;

std::string_view to_string(Outcome outcome) noexcept;
std::optional<Outcome> parse_outcome(std::string_view name) noexcept;

constexpr bool is_predict(CommandKind kind) noexcept {
  return kind == CommandKind::PredictFeature || kind == CommandKind::PredictLocation;
}

/// The error line is raised only for the three failure outcomes.
constexpr bool is_error(Outcome outcome) noexcept {
  return outcome == Outcome::StoreFailed || outcome == Outcome::DeleteFailed ||
         outcome == Outcome::InferFailed;
}

}  // namespace nertcam
