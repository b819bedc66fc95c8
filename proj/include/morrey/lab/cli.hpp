#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "morrey/lab/report.hpp"

namespace morrey::lab {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitCheckFailed = 3,
  kExitRuntime = 4,
};

/// Environment variable overriding the configured report directory.
inline constexpr const char* kReportDirEnv = "MORREY_LAB_REPORT_DIR";

/// Subcommands: norm, maximal, ap-constant, ax-estimate, verify-eqst,
/// verify-redw, verify-kp, verify-connect, scan, lattices.
std::vector<std::string> subcommands();

/// Runs one experiment from a parsed config. Throws ConfigError or Error.
Report run_experiment(const std::string& subcommand, const Json& config);

/// morrey-lab <subcommand> --config FILE [--report-dir DIR] [--seed N] [--stem NAME] [--quiet]
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace morrey::lab
