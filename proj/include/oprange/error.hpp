#pragma once

#include <stdexcept>
#include <string>

namespace oprange {

enum class ErrorKind {
  DimensionMismatch,
  NotPSD,
  ExactModeUnsupported,
  NotInRange,
  RangesDiffer,
  NotQNormalized,
  NotNormalized,
  CriteriaDisagree,
  VerificationFailed,
  InvalidL,
  IncompatibleL,
  NotAlmostDominated,
  RouteDisagreement,
  NotAFactorization,
  RelationsDiffer,
  Parse,
  Io,
  InvalidArgument,
};

/// Stable machine-readable name, used as `error.kind` in CLI reports.
const char* kind_name(ErrorKind kind) noexcept;

/// Errors that can only come from a broken implementation (a failed
/// self-consistency check), as opposed to bad input.
bool is_internal(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string reason = {})
      : std::runtime_error(message), kind_(kind), reason_(std::move(reason)) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Short tag naming the violated condition, empty when not applicable.
  const std::string& reason() const noexcept { return reason_; }

 private:
  ErrorKind kind_;
  std::string reason_;
};

}  // namespace oprange
