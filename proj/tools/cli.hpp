#ifndef TRIQUAD_TOOLS_CLI_HPP
#define TRIQUAD_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace triquad::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;       // usage, parse or I/O failure
inline constexpr int kExitShortfall = 2;   // unconverged, or strength below the claim
inline constexpr int kExitDisagreement = 3; // basis and monomial certification disagree

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace triquad::cli

#endif // TRIQUAD_TOOLS_CLI_HPP
