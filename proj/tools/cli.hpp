#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cubelink::cli {

enum ExitCode : int {
  kOk = 0,
  kUnlinked = 1,  ///< also: invalid linkage, failed certification
  kUsage = 2,     ///< bad flags, malformed JSON, violated preconditions
  kInternal = 3,  ///< invariant failure; a replay file is written
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cubelink::cli
