#pragma once

// The prgraph command line.  Exit codes: 0 success, 1 usage or parse
// error, 2 validation or property failure.

#include <ostream>

namespace prg {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace prg
