#include "schurloss/error.hpp"

namespace schurloss {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::NotLossless: return "NotLossless";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotContractive: return "NotContractive";
    case ErrorCode::DegenerateVector: return "DegenerateVector";
    case ErrorCode::NotJUnitary: return "NotJUnitary";
    case ErrorCode::SingularBlock: return "SingularBlock";
    case ErrorCode::SingularPivot: return "SingularPivot";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::SchurVectorTooLarge: return "SchurVectorTooLarge";
    case ErrorCode::DeflationFailed: return "DeflationFailed";
    case ErrorCode::NoAdmissibleDirection: return "NoAdmissibleDirection";
    case ErrorCode::NotInChart: return "NotInChart";
    case ErrorCode::NotOutputNormal: return "NotOutputNormal";
    case ErrorCode::WindingAmbiguous: return "WindingAmbiguous";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

NotInChartError::NotInChartError(int step, double norm, const std::string& what)
    : Error(ErrorCode::NotInChart, what), step_(step), norm_(norm) {}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace schurloss
