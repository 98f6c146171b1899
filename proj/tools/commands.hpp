#pragma once

#include <iosfwd>

namespace fdet::cli {

/// Exit codes: 0 success, 1 input or verification error, 2 inconclusive or
/// failed hypothesis.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fdet::cli
