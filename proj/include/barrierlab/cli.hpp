#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace barrierlab::cli {

// Runs one CLI invocation. Exit code 0: all requested checks passed;
// 1: a check failed (structured report still emitted); 2: input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace barrierlab::cli
