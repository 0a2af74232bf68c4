#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace roommates {

enum class Errc {
  OddAgentCount,
  SizeMismatch,
  NegativeValue,
  ValueAboveBig,
  NonzeroDiagonal,
  DuplicateLabel,
  UnknownLabel,
  InvalidAssignment,
  InvalidOrder,
  SameRoomSwap,
  MalformedCycle,
  NotBinarySymmetric,
  NoStableAssignment,
  InstanceTooLarge,
  SpaceTooLarge,
  InvalidArgument,
  Parse,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::OddAgentCount: return "OddAgentCount";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::NegativeValue: return "NegativeValue";
    case Errc::ValueAboveBig: return "ValueAboveBig";
    case Errc::NonzeroDiagonal: return "NonzeroDiagonal";
    case Errc::DuplicateLabel: return "DuplicateLabel";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::InvalidAssignment: return "InvalidAssignment";
    case Errc::InvalidOrder: return "InvalidOrder";
    case Errc::SameRoomSwap: return "SameRoomSwap";
    case Errc::MalformedCycle: return "MalformedCycle";
    case Errc::NotBinarySymmetric: return "NotBinarySymmetric";
    case Errc::NoStableAssignment: return "NoStableAssignment";
    case Errc::InstanceTooLarge: return "InstanceTooLarge";
    case Errc::SpaceTooLarge: return "SpaceTooLarge";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

/// Error categories, used by the CLI to pick an exit code.
enum class ErrorClass { Validation, CapExceeded, Precondition };

constexpr ErrorClass classify(Errc code) {
  switch (code) {
    case Errc::InstanceTooLarge:
    case Errc::SpaceTooLarge:
      return ErrorClass::CapExceeded;
    case Errc::SameRoomSwap:
    case Errc::MalformedCycle:
    case Errc::NotBinarySymmetric:
    case Errc::NoStableAssignment:
      return ErrorClass::Precondition;
    default:
      return ErrorClass::Validation;
  }
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace roommates
