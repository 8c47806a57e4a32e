#pragma once

#include <iosfwd>

namespace cfrit::cli {

// Entry point behind the `cfrit` binary; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cfrit::cli
