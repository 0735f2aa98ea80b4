#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace schurloss {

enum class ErrorCode {
  NotStable,
  NotHermitian,
  NotIsometry,
  PoleHit,
  NotLossless,
  NotMinimal,
  DimensionMismatch,
  NotContractive,
  DegenerateVector,
  NotJUnitary,
  SingularBlock,
  SingularPivot,
  DegeneratePair,
  SchurVectorTooLarge,
  DeflationFailed,
  NoAdmissibleDirection,
  NotInChart,
  NotOutputNormal,
  WindingAmbiguous,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

/// Raised by the chart guards. `step` is the Schur step whose vector left
/// the open unit ball (0 for a base-constant mismatch, -1 for a malformed
/// chart); `norm` is the offending value.
class NotInChartError : public Error {
 public:
  NotInChartError(int step, double norm, const std::string& what);

  int step() const noexcept { return step_; }
  double norm() const noexcept { return norm_; }

 private:
  int step_;
  double norm_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

}  // namespace schurloss
