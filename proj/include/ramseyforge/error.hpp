#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ramseyforge {

enum class ErrorKind {
  InvalidSignature,
  UnknownRelation,
  ArityMismatch,
  OutOfRangeElement,
  EmptyUniverse,
  DuplicateTuple,
  TooLarge,
  EmptySubset,
  SignatureMismatch,
  BoundExceeded,
  NonRigidPair,
  UnknownType,
  InternalCycleContradiction,
  WitnessRealizationFailed,
  CycleDetected,
  SearchSpaceTooLarge,
  RuleInapplicable,
  NotRigid,
  NotHereditary,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Thrown by layered_order and friends; carries a shortest directed cycle.
class CycleError : public Error {
 public:
  CycleError(std::vector<int> cycle, const std::string& message)
      : Error(ErrorKind::CycleDetected, message), cycle_(std::move(cycle)) {}

  const std::vector<int>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<int> cycle_;
};

}  // namespace ramseyforge
