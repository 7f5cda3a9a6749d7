#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dcsbm::cli {

// Runs the command-line front end. `args` excludes the program name.
// Returns the process exit code: 0 success, 1 usage error, 2 data error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcsbm::cli
