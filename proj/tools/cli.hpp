#pragma once

namespace collox_cli {

/// Entry point shared by the binary and the tests. Returns the process exit
/// code: 0 success, 1 usage/configuration error, 2 non-convergence or
/// insufficient data.
int run(int argc, const char* const* argv);

}  // namespace collox_cli
