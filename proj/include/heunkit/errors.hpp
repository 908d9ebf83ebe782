#pragma once

#include <stdexcept>
#include <string>

namespace heunkit {

enum class ErrorCode {
  ZeroSingularity,
  NonFinite,
  NegativeBase,
  SingularDenominator,
  DegenerateSecondKind,
  SingularPoint,
  PoleAtC,
  NoConvergence,
  MaxTermsExceeded,
  DegenerateA,
  CapsNotMonotone,
  InconsistentParameterization,
  OutsideRegion,
  DivergentIntegral,
  UnsupportedDepth,
  NonIntegerCap,
  OutsideMappedRegion,
  UnknownTransform,
  RegistryParse,
};

const char* to_string(ErrorCode c);

// Every library failure is reported through this type. The module name
// is carried so that the CLI can print e.g. "recurrence: SingularDenominator".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& detail);

  ErrorCode code() const { return code_; }
  const std::string& module() const { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

}  // namespace heunkit
