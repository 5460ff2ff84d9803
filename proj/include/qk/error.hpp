#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qk {

enum class ErrorCode {
  Singular,
  ShapeMismatch,
  NotAntisymmetric,
  JacobiViolation,
  JSquaredNotMinusIdentity,
  MetricNotPositiveDefinite,
  MetricNotHermitian,
  NotTamed,
  OddDimension,
  SyntaxError,
  UnknownExample,
  UnsupportedField,
  DegenerateDimension,
  NotQuasiKahler,
  NotAlmostKahler,
  HypothesisFailed,
  NotApplicable,
  PivotNotFound,
  WrongDimension,
};

std::string_view to_string(ErrorCode code);

/// Engine error. `where` locates the problem (a JSON field path, an index
/// tuple) when one is known.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string where = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& where() const noexcept { return where_; }
  /// The message without code and location.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::string where_;
};

}  // namespace qk
