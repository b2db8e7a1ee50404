#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pvoice::cli {

enum ExitCode : int {
  kOk = 0,
  kIoFailure = 1,
  kInputError = 2,
  kPrecondition = 3,
  kNumericFailure = 4,
};

/// Runs the pvoice command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pvoice::cli
