#pragma once

#include <iosfwd>

namespace safeflow {

/// Exit status: 0 on success, 1 when any input or record failed (the batch
/// still runs to the end), 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace safeflow
