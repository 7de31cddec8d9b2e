#pragma once

#include <iosfwd>

namespace gkf {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadArguments = 2;
inline constexpr int kExitInternal = 3;

/// Entry point of the gkf command line; reports go to `out`, diagnostics and
/// progress to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gkf
