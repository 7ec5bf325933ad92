#pragma once

#include <cstdint>
#include <ostream>

namespace qudit_phase {

/// Runs the invariant sweep for dimensions 1..max_d (plus one fixed
/// large-d continuum check), printing one line per check group.
/// Returns the number of failed checks.
int run_selftest(int max_d, std::uint64_t seed, std::ostream& out);

} // namespace qudit_phase
