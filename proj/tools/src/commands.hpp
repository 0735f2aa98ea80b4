#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "schurloss/error.hpp"

namespace schurloss::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitNumerical = 3,
};

/// Input and chart problems map to kExitValidation, failed numerical
/// guarantees to kExitNumerical.
int exit_code_for(ErrorCode code);

/// Runs `schurloss <args...>`; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schurloss::cli
