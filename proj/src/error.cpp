#include "amalgam/error.hpp"

namespace amalgam {

std::string_view to_string(ErrorCode code)
{
  switch (code) {
  case ErrorCode::BoundExceeded: return "BoundExceeded";
  case ErrorCode::DegreeMismatch: return "DegreeMismatch";
  case ErrorCode::InvalidPermutation: return "InvalidPermutation";
  case ErrorCode::NotASubgroup: return "NotASubgroup";
  case ErrorCode::NotNormal: return "NotNormal";
  case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
  case ErrorCode::NotComplement: return "NotComplement";
  case ErrorCode::NotCovering: return "NotCovering";
  case ErrorCode::NotNormalInRetract: return "NotNormalInRetract";
  case ErrorCode::AlreadyInRetract: return "AlreadyInRetract";
  case ErrorCode::NoSeparatingN: return "NoSeparatingN";
  case ErrorCode::ElementNotInFactor: return "ElementNotInFactor";
  case ErrorCode::NotCyclic: return "NotCyclic";
  case ErrorCode::MissingRetract: return "MissingRetract";
  case ErrorCode::NotPPowerIndex: return "NotPPowerIndex";
  case ErrorCode::IncompatiblePair: return "IncompatiblePair";
  case ErrorCode::NotPPrimeIsolated: return "NotPPrimeIsolated";
  case ErrorCode::SyntaxError: return "SyntaxError";
  case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string const &what)
  : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{}

} // namespace amalgam
