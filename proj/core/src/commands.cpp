#include "nertcam/commands.hpp"

#include <array>
#include <utility>

namespace nertcam {

namespace {

constexpr std::array<std::pair<CommandKind, std::string_view>, 7> kCommandNames{{
    {CommandKind::Clear, "CLEAR"},
    {CommandKind::Reset, "RESET"},
    {CommandKind::Store, "STORE"},
    {CommandKind::Delete, "DELETE"},
    {CommandKind::Infer, "INFER"},
    {CommandKind::PredictFeature, "PREDICT_FEATURE"},
    {CommandKind::PredictLocation, "PREDICT_LOCATION"},
}};

constexpr std::array<std::pair<Outcome, std::string_view>, 6> kOutcomeNames{{
    {Outcome::Success, "Success"},
    {Outcome::StoreFailed, "Store_Failed"},
    {Outcome::DeleteFailed, "Delete_Failed"},
    {Outcome::InferFailed, "Infer_Failed"},
    {Outcome::ContextSwitch, "Context_Switch"},
    {Outcome::RejectedBusy, "RejectedBusy"},
}};

}  // namespace

std::string_view to_string(CommandKind kind) noexcept {
  for (const auto& [k, name] : kCommandNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<CommandKind> parse_command_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kCommandNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Outcome outcome) noexcept {
  for (const auto& [o, name] : kOutcomeNames) {
    if (o == outcome) return name;
  }
  return "?";
}

std::optional<Outcome> parse_outcome(std::string_view name) noexcept {
  for (const auto& [o, n] : kOutcomeNames) {
    if (n == name) return o;
  }
  return std::nullopt;
}

}  // namespace nertcam
