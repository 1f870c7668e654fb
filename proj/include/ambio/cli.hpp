#pragma once

#include <ostream>

namespace ambio {

/// Runs one CLI invocation: encode, augment, analyze, evaluate or condition.
/// Results go to `out`; on failure a single JSON line
/// {"error": <kind>, "message": <text>} goes to `err` and the return value
/// is nonzero (2 for usage errors, 1 for everything else).
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ambio
