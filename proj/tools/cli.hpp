#pragma once

#include <string>
#include <vector>

namespace qchow::cli {

// Runs the command line given as argv-style arguments (program name
// excluded).  Exit codes: 0 success, 1 check failure, 2 usage or parse
// error, 3 contradiction from table propagation.
int run(const std::vector<std::string>& args);

}  // namespace qchow::cli
