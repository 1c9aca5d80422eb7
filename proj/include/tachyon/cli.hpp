#pragma once

#include <ostream>

#include "tachyon/error.hpp"

namespace tachyon::cli {

// Process exit statuses. Module errors map to kExitModuleBase + ErrorCode.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitModuleBase = 10;

int module_exit_code(ErrorCode code);

/// Entry point of tachyon-lab; writes progress to out and diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tachyon::cli
