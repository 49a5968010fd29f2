#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sublevelstat::cli {

/// Exit codes of the sublevelstat tool.
enum ExitCode : int
{
  kSuccess = 0,
  kRuntimeFailure = 1,
  kUsage = 2,
};

/// Runs the tool on already-split arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sublevelstat::cli
