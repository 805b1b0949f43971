#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trails {

// Exit statuses used by the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAbsent = 1;       // verification failure or certified absence
inline constexpr int kExitUsage = 2;        // bad arguments or malformed input
inline constexpr int kExitFalsified = 3;    // a structural guarantee failed to hold

// Runs one subcommand; `in` backs any "-" file argument and default
// graph input, documents go to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
             std::ostream& err);

}  // namespace trails
