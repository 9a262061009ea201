#pragma once

#include <ostream>

namespace moonlie {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;

/// Environment variable holding the default truncation order.
inline constexpr const char* kOrderEnv = "MOONLIE_ORDER";

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace moonlie
