#include "heunkit/errors.hpp"

namespace heunkit {

const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroSingularity: return "ZeroSingularity";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NegativeBase: return "NegativeBase";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::DegenerateSecondKind: return "DegenerateSecondKind";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::PoleAtC: return "PoleAtC";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::MaxTermsExceeded: return "MaxTermsExceeded";
    case ErrorCode::DegenerateA: return "DegenerateA";
    case ErrorCode::CapsNotMonotone: return "CapsNotMonotone";
    case ErrorCode::InconsistentParameterization: return "InconsistentParameterization";
    case ErrorCode::OutsideRegion: return "OutsideRegion";
    case ErrorCode::DivergentIntegral: return "DivergentIntegral";
    case ErrorCode::UnsupportedDepth: return "UnsupportedDepth";
    case ErrorCode::NonIntegerCap: return "NonIntegerCap";
    case ErrorCode::OutsideMappedRegion: return "OutsideMappedRegion";
    case ErrorCode::UnknownTransform: return "UnknownTransform";
    case ErrorCode::RegistryParse: return "RegistryParse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string module, const std::string& detail)
    : std::runtime_error(module + ": " + to_string(code) + (detail.empty() ? "" : " (" + detail + ")")),
      code_(code),
      module_(std::move(module)) {}

}  // namespace heunkit
