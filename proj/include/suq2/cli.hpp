#pragma once

#include "suq2/report.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace suq2 {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs one verification command. args excludes the program name.
/// Returns 0 on pass, 1 on a quantitative failure and 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace suq2
