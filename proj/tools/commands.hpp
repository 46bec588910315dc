#pragma once

#include <optional>
#include <string>
#include <vector>

#include "certificate.hpp"

namespace amalgam::cli {

enum Exit : int { kPositive = 0, kNegative = 1, kBudgetExhausted = 2, kInputError = 3 };

struct Outcome {
  int exit_code = kPositive;
  std::string output;   // for stdout
  std::string error;    // for stderr
  std::optional<Certificate> certificate;
  std::string certificate_path;
};

/// Runs one command line (without the program name). Never throws.
Outcome execute(std::vector<std::string> const &args);

} // namespace amalgam::cli
