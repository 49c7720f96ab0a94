#ifndef MINUTES_CLI_HPP_
#define MINUTES_CLI_HPP_

#include <iosfwd>

namespace minutes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation errors, unknown versions, ...
inline constexpr int kExitUsage = 2;

// Subcommands: new, validate, metrics, iaa, serve. Reports go to `out`,
// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace minutes::cli

#endif  // MINUTES_CLI_HPP_
