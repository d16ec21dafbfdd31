#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace genfinder::cli {

/// Exit codes: 0 yes / 1 no / 2 indeterminate / 3 verification mismatch /
/// 64 usage / 65 malformed or out-of-cap data / 66 missing input file.
inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitIndeterminate = 2;
inline constexpr int kExitMismatch = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;
inline constexpr int kExitNoInput = 66;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace genfinder::cli
