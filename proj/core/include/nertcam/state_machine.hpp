#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "nertcam/commands.hpp"
#include "nertcam/rtcam.hpp"
#include "nertcam/sdr.hpp"

namespace nertcam {

/// Controller states. Start (SS) is the only state that accepts commands;
/// the controller is busy in every other state.
enum class ControllerState {
  Start,          // SS
  FirstLookup,    // FL
  InternalReset,  // IR
  SecondLookup,   // SL
};

enum class MicroOpKind { Clear, Reset, Store, Delete, Lookup, Validate };

struct LookupParams {
  LookupScope scope = LookupScope::ValidOnly;
  MatchMode mode = MatchMode::Equality;
  ValidUpdate update = ValidUpdate::Commit;

  friend bool operator==(const LookupParams&, const LookupParams&) = default;
};

struct MicroOp {
  MicroOpKind kind = MicroOpKind::Reset;
  std::optional<LookupParams> lookup;

  friend bool operator==(const MicroOp&, const MicroOp&) = default;
};

std::string_view to_string(ControllerState state) noexcept;
std::string_view to_string(MicroOpKind kind) noexcept;

/// Status lines presented to the agent when a command completes.
struct StatusOut {
  Outcome outcome = Outcome::Success;
  bool busy = false;
  bool error = false;
  bool full = false;

  friend bool operator==(const StatusOut&, const StatusOut&) = default;
};

/// One Mealy transition: the micro-op issued this cycle, the next state and,
/// when the transition lands back in Start, the command's outcome.
struct Transition {
  ControllerState next = ControllerState::Start;
  MicroOp op;
  std::optional<Outcome> outcome;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// The complete transition table. `valid_entry` is the memory's valid_entry
/// line as produced by the previous cycle's micro-op. `store_overflow` is set
/// when the store micro-op of the previous cycle found no empty row.
///
/// Throws std::logic_error for (state, command) pairs that cannot occur.
Transition transition(ControllerState state, CommandKind pending, bool valid_entry,
                      bool store_overflow = false);

/// Per-cycle trace record.
struct CycleRecord {
  std::uint64_t cycle = 0;  // 1-based, within the command
  CommandKind command = CommandKind::Reset;
  ControllerState from = ControllerState::Start;
  ControllerState to = ControllerState::Start;
  MicroOpKind op = MicroOpKind::Reset;
  bool valid_entry = false;
  std::optional<Outcome> outcome;
};

/// Drives an Rtcam through the micro-op sequence of one command at a time.
class Controller {
 public:
  ControllerState state() const noexcept { return state_; }
  bool busy() const noexcept { return state_ != ControllerState::Start; }
  /// True when a command has been accepted and not yet completed.
  bool in_flight() const noexcept { return pending_.has_value(); }

  /// Latches a command. Returns false (and changes nothing) unless the
  /// controller is in Start with nothing pending.
  bool accept(CommandKind kind, Sdr query, DcMask dc);

  /// Executes one clock cycle against `memory`. Precondition: in_flight().
  CycleRecord step(Rtcam& memory);

 private:
  struct Pending {
    CommandKind kind;
    Sdr query;
    DcMask dc;
    std::uint64_t cycles = 0;
    bool store_overflow = false;
  };

  void execute(const MicroOp& op, Rtcam& memory, Pending& pending);

  ControllerState state_ = ControllerState::Start;
  std::optional<Pending> pending_;
  bool valid_entry_ = false;
};

}  // namespace nertcam
