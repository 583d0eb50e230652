#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace calabi::cli {

enum ExitStatus : int {
    ok = 0,
    usage_error = 1,
    internal_diagnostic = 2,
};

// Runs one invocation ("calabi <subcommand> [flags]"); args excludes the
// program name. Output goes to out, diagnostics to err.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace calabi::cli
