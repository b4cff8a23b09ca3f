#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arbor::cli {

/// Runs the command line given by args (without the program name), writing
/// results to out and diagnostics to err. Returns 0 on success, 1 on usage
/// or contract errors, 2 when a verification or audit found a violation.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace arbor::cli
