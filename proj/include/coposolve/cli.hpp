#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coposolve::cli {

/// Runs one command line (without the program name). Reports go to `out`;
/// failures print a single JSON line on `err` and return a nonzero code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coposolve::cli
