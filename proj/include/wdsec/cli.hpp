#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wdsec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDiffers = 1;
inline constexpr int kExitAmbiguous = 2;
inline constexpr int kExitUnknown = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitDomain = 65;

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// usage text and diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wdsec::cli
