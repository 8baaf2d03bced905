#pragma once

#include <ostream>

namespace qwoa::cli {

/// Runs one qwoa-dla invocation. Results go to `out` (unless --out names a
/// file); diagnostics and run metadata go to `err`. Returns the exit code:
/// 0 ok, 1 usage, 2 domain error, 3 resource error, 4 an optimal-count check failed.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwoa::cli
