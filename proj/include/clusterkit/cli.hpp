#pragma once

namespace clusterkit::cli {

// Full command-line surface. Exit codes: 0 success (checks passed), 2 a
// criterion check failed, 1 errors (bad config, I/O, invalid arguments).
int run(int argc, const char* const* argv);

}  // namespace clusterkit::cli
