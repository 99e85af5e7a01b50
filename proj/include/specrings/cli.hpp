#pragma once

#include <iosfwd>

namespace specrings {

// Exit codes of the experiment harness.
enum ExitCode : int { kExitOk = 0, kExitAssertion = 1, kExitConfig = 2 };

// Entry point of the `specrings` command line tool:
//   specrings <spectrum|figure1|figure2|potential-grid|verify-lemmas|gauss-moments> [flags]
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace specrings
