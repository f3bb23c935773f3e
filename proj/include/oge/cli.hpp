#pragma once

namespace oge::cli {

// Full command-line entry point (parsing, dispatch, error-to-exit-code
// mapping). Exposed from the library so tests can drive the exact code path
// the binary uses. Exit codes: 0 success, 1 usage error, 2 data error,
// 3 internal error.
int run(int argc, const char* const* argv);

}
