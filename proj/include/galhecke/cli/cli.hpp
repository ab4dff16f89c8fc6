#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace galhecke {

// Runs the command line given as argv[1..]; returns the process exit code
// (0 ok, 1 mismatch, 2 validation, 3 undetermined, 4 unsupported, 5 data gap).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace galhecke
