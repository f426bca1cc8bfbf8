#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace forestdec::cli {

enum ExitCode : int {
  kYes = 0,
  kNo = 1,
  kBudgetExceeded = 2,
  kUsage = 64,
  kDataError = 65,
  kNoInput = 66,
  kUnsupported = 69,
  kCannotCreate = 73,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace forestdec::cli
