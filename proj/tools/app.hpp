#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace paucity::app {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kAssertionFailed = 1, kUsage = 2, kResource = 3 };

/// Runs one invocation. args excludes the program name. The report goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paucity::app
