#include "qk/error.hpp"

namespace qk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorCode::JacobiViolation: return "JacobiViolation";
    case ErrorCode::JSquaredNotMinusIdentity: return "JSquaredNotMinusIdentity";
    case ErrorCode::MetricNotPositiveDefinite: return "MetricNotPositiveDefinite";
    case ErrorCode::MetricNotHermitian: return "MetricNotHermitian";
    case ErrorCode::NotTamed: return "NotTamed";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::DegenerateDimension: return "DegenerateDimension";
    case ErrorCode::NotQuasiKahler: return "NotQuasiKahler";
    case ErrorCode::NotAlmostKahler: return "NotAlmostKahler";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::PivotNotFound: return "PivotNotFound";
    case ErrorCode::WrongDimension: return "WrongDimension";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::string where)
    : std::runtime_error(std::string(to_string(code)) + ": " + message +
                         (where.empty() ? std::string{} : " (at " + where + ")")),
      code_(code),
      detail_(message),
      where_(std::move(where)) {}

}  // namespace qk
