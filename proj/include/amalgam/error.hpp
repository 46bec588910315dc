#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace amalgam {

enum class ErrorCode {
  BoundExceeded,
  DegreeMismatch,
  InvalidPermutation,
  NotASubgroup,
  NotNormal,
  NotAHomomorphism,
  NotComplement,
  NotCovering,
  NotNormalInRetract,
  AlreadyInRetract,
  NoSeparatingN,
  ElementNotInFactor,
  NotCyclic,
  MissingRetract,
  NotPPowerIndex,
  IncompatiblePair,
  NotPPrimeIsolated,
  SyntaxError,
  ValidationError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string const &what);

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

} // namespace amalgam
