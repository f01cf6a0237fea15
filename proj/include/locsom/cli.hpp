#pragma once

#include <iosfwd>

namespace locsom::cli {

enum ExitCode : int {
    Ok = 0,
    Usage = 2,
    Config = 3,
    Io = 4,
    Runtime = 5,
};

/// Entry point of the `locsom` tool: train, sweep, bench and plot.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace locsom::cli
