#pragma once

// Command-line front end. Exit codes: 0 success, 1 check or validation
// failure (including cap and depth errors), 2 usage or config error.

#include <ostream>
#include <string>
#include <vector>

namespace dimlab {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dimlab
