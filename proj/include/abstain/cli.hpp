#pragma once

#include <iosfwd>

namespace abstain {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitCertificate = 2;

// Runs the command line tool; output goes to `out` unless --out is given.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace abstain
