//
// cli.hpp
//
// Command dispatch for the bezout tool, callable in-process so the exit-code
// contract is testable without spawning:
//   0 success, 1 usage/I-O, 2 not solvable, 3 verification failure.
//

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bezout::cli {

/// argv-style entry (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bezout::cli
