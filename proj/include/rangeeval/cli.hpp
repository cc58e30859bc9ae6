#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace rangeeval::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    ok = 0,
    input_error = 1,  // unreadable, unparseable or out-of-bounds input
    config_error = 2, // invalid flags or parameter values
};

/// Runs `rangeeval <args...>` (program name excluded). Reports go to `out`,
/// diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace rangeeval::cli
