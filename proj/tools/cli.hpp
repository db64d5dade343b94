#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kbp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInvariant = 2;

/// Runs one `kbp` subcommand. `args` excludes the program name; `in` backs
/// edge-list input when no --input file is given.
int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace kbp::cli
