#pragma once

#include <iosfwd>

namespace pairy::cli {

// Parses the command line, runs one subcommand and returns the process exit
// code: 0 ok, 2 validation, 3 numeric failure, 4 check mismatch.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pairy::cli
