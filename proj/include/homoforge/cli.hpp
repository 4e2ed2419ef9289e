#ifndef HOMOFORGE_CLI_HPP
#define HOMOFORGE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace homoforge {

/// Exit codes shared by every subcommand.
enum ExitCode : int
{
    kExitOk = 0,
    kExitFailure = 1,   ///< runtime, I/O or verification failure
    kExitUsage = 2,     ///< bad arguments or malformed input file
};

/**
 * Entry point of the `homoforge` tool. Subcommands: sample, homology, snf,
 * shadow, verify-partition, hitting-time, shadow-growth, uncovered-rank,
 * torsion-scan. `args` excludes the program name.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace homoforge

#endif
