#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace casimir::cli {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kSweepColumns =
    "d_over_R,L_over_R,E,E_over_PFA,l_max_used,delta,series_value,abs_err_estimate";

// Runs the command line; returns the process exit code (0 ok, 2 config
// error, 3 numerical-domain error).  Normal output goes to `out` unless
// --out is given, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
