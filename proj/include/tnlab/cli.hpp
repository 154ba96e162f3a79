#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tnlab {

// Parses and runs one command.  Returns the process exit code:
// 0 = all checks passed, 1 = configuration/usage error, 2 = a check failed.
// The report document is written to --out when given, otherwise to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace tnlab
