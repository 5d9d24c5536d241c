#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cpsep {

enum class ErrorKind {
  NotAGroup,
  IndexOutOfRange,
  NotSubgroup,
  NotNormal,
  NotAHom,
  InconsistentPartial,
  NotPrime,
  NotPPower,
  PhiNotIso,
  NotCentral,
  NotCyclicallyReduced,
  NotCompatible,
  NoRefinementFound,
  NotConnected,
  GraphAxiom,
  InvalidTree,
  WrongShape,
  ElementsConjugate,
  BudgetExhausted,
  Parse,
};

std::string_view to_string(ErrorKind kind);

// Reasons attached to ErrorKind::NotAGroup.
enum class NotAGroupReason { None, NoIdentity, NotALatinSquare, NonAssociative, NoInverse };

std::string_view to_string(NotAGroupReason reason);

// Every failure raised by the library. The kind is a stable, testable tag;
// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}
  Error(NotAGroupReason reason, const std::string& message)
      : std::runtime_error("NotAGroup(" + std::string(to_string(reason)) + "): " + message),
        kind_(ErrorKind::NotAGroup),
        reason_(reason) {}

  ErrorKind kind() const noexcept { return kind_; }
  NotAGroupReason reason() const noexcept { return reason_; }

 private:
  ErrorKind kind_;
  NotAGroupReason reason_ = NotAGroupReason::None;
};

}  // namespace cpsep
