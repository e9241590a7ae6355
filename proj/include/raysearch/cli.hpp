#pragma once

#include <string>
#include <vector>

namespace raysearch::cli {

struct RunResult {
    int exit_code = 0;
    std::string out; // primary payload (JSON, JSON Lines, or CSV)
    std::string err; // machine-readable error JSON on failure
};

/// Dispatches one invocation. `args` excludes the program name. All output
/// is returned rather than printed so callers (and tests) can capture it
/// byte-for-byte; main() forwards to stdout/stderr.
RunResult run(const std::vector<std::string>& args);

} // namespace raysearch::cli
