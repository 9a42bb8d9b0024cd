#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unirec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumeric = 2;

/// Runs one subcommand. `args` excludes the program name. Data goes to `out`
/// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace unirec::cli
