#pragma once

namespace qudit_phase::cli {

/// Entry point for the command-line tool.  Exit codes: 0 success,
/// 1 usage error, 2 violated invariant or runtime failure.
int run(int argc, const char* const* argv);

} // namespace qudit_phase::cli
