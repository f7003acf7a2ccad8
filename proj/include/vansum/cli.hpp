#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vansum::cli {

/// Exit codes of run().
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInvalid = 2;

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vansum::cli
