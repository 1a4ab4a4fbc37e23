#include "nertcam/state_machine.hpp"

#include <stdexcept>
#include <string>

namespace nertcam {

namespace {

MicroOp simple(MicroOpKind kind) { return {kind, std::nullopt}; }

MicroOp lookup(LookupScope scope, ValidUpdate update = ValidUpdate::Commit) {
  return {MicroOpKind::Lookup, LookupParams{scope, MatchMode::Equality, update}};
}

[[noreturn]] void unreachable(ControllerState state, CommandKind kind) {
  throw std::logic_error("no transition from " + std::string(to_string(state)) + " for " +
                         std::string(to_string(kind)));
}

}  // namespace

std::string_view to_string(ControllerState state) noexcept {
  switch (state) {
    case ControllerState::Start: return "SS";
    case ControllerState::FirstLookup: return "FL";
    case ControllerState::InternalReset: return "IR";
    case ControllerState::SecondLookup: return "SL";
  }
  return "?";
}

std::string_view to_string(MicroOpKind kind) noexcept {
  switch (kind) {
    case MicroOpKind::Clear: return "clear";
    case MicroOpKind::Reset: return "reset";
    case MicroOpKind::Store: return "store";
    case MicroOpKind::Delete: return "delete";
    case MicroOpKind::Lookup: return "lookup";
    case MicroOpKind::Validate: return "validate";
  }
  return "?";
}

Transition transition(ControllerState state, CommandKind pending, bool valid_entry,
                      bool store_overflow) {
  using S = ControllerState;
  using K = CommandKind;

  switch (state) {
    case S::Start:
      switch (pending) {
        case K::Clear: return {S::Start, simple(MicroOpKind::Clear), Outcome::Success};
        case K::Reset: return {S::Start, simple(MicroOpKind::Reset), Outcome::Success};
        case K::PredictFeature:
        case K::PredictLocation:
          return {S::Start, lookup(LookupScope::ValidOnly, ValidUpdate::Discard), Outcome::Success};
        case K::Store:
        case K::Delete: return {S::FirstLookup, lookup(LookupScope::All), std::nullopt};
        case K::Infer: return {S::FirstLookup, lookup(LookupScope::ValidOnly), std::nullopt};
      }
      break;

    case S::FirstLookup:
      switch (pending) {
        case K::Store:
          if (valid_entry) return {S::Start, simple(MicroOpKind::Reset), Outcome::StoreFailed};
          return {S::InternalReset, simple(MicroOpKind::Store), std::nullopt};
        case K::Delete:
          if (valid_entry) return {S::InternalReset, simple(MicroOpKind::Delete), std::nullopt};
          return {S::Start, simple(MicroOpKind::Reset), Outcome::DeleteFailed};
        case K::Infer:
          if (valid_entry) return {S::Start, simple(MicroOpKind::Validate), Outcome::Success};
          return {S::InternalReset, simple(MicroOpKind::Reset), std::nullopt};
        default: break;
      }
      break;

    case S::InternalReset:
      switch (pending) {
        case K::Store:
          return {S::Start, simple(MicroOpKind::Reset),
                  store_overflow ? Outcome::StoreFailed : Outcome::Success};
        case K::Delete: return {S::Start, simple(MicroOpKind::Reset), Outcome::Success};
        case K::Infer: return {S::SecondLookup, lookup(LookupScope::ValidOnly), std::nullopt};
        default: break;
      }
      break;

    case S::SecondLookup:
      if (pending == K::Infer) {
        if (valid_entry) return {S::Start, simple(MicroOpKind::Validate), Outcome::ContextSwitch};
        return {S::Start, simple(MicroOpKind::Reset), Outcome::InferFailed};
      }
      break;
  }
  unreachable(state, pending);
}

bool Controller::accept(CommandKind kind, Sdr query, DcMask dc) {
  if (busy() || pending_) return false;
  pending_ = Pending{kind, std::move(query), std::move(dc)};
  return true;
}

void Controller::execute(const MicroOp& op, Rtcam& memory, Pending& pending) {
  switch (op.kind) {
    case MicroOpKind::Clear:
      memory.clear();
      valid_entry_ = false;
      break;
    case MicroOpKind::Reset:
      memory.reset();
      valid_entry_ = false;
      break;
    case MicroOpKind::Store:
      pending.store_overflow = !memory.store(pending.query).has_value();
      valid_entry_ = false;
      break;
    case MicroOpKind::Delete:
      memory.remove_matched();
      valid_entry_ = false;
      break;
    case MicroOpKind::Lookup: {
      const auto& p = *op.lookup;
      valid_entry_ = memory.lookup(pending.query, pending.dc, p.scope, p.mode, p.update);
      break;
    }
    case MicroOpKind::Validate:
      memory.validate();
      valid_entry_ = memory.valid_entry();
      break;
  }
}

CycleRecord Controller::step(Rtcam& memory) {
  if (!pending_) throw std::logic_error("controller stepped with no command in flight");
  Pending& pending = *pending_;

  const Transition t = transition(state_, pending.kind, valid_entry_, pending.store_overflow);
  CycleRecord record;
  record.command = pending.kind;
  record.from = state_;
  record.to = t.next;
  record.op = t.op.kind;
  record.cycle = ++pending.cycles;

  execute(t.op, memory, pending);
  record.valid_entry = valid_entry_;
  record.outcome = t.outcome;

  state_ = t.next;
  if (state_ == ControllerState::Start) {
    pending_.reset();
    valid_entry_ = false;
  }
  return record;
}

}  // namespace nertcam
