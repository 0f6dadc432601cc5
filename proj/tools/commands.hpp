#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cargoload::cli {

// Entry point shared by the executable and the CLI tests. args[0] is the
// program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cargoload::cli
