#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pointlab/cli/config.hpp"

namespace pointlab::cli {

enum ExitCode { kExitOk = 0, kExitVerificationFailure = 1, kExitUsage = 2 };

struct CommandResult {
    int exit_code = kExitOk;
    std::string output;                // main document (CSV or JSON)
    std::optional<std::string> summary;  // side report written next to --out, or to stderr
    std::vector<std::string> diagnostics;  // one line each, for stderr
};

const std::vector<std::string>& command_names();

/// Runs one subcommand on a parsed config. Throws ConfigError for invalid
/// configs; numerical failures are reported through exit code 1.
CommandResult run_command(const std::string& name, const json& config,
                          const std::optional<std::string>& preset_override);

CommandResult cmd_parametrize(const json& config, const std::optional<std::string>& preset);
CommandResult cmd_resolvent(const json& config, const std::optional<std::string>& preset);
CommandResult cmd_spectrum(const json& config, const std::optional<std::string>& preset);
CommandResult cmd_wave(const json& config, const std::optional<std::string>& preset);
CommandResult cmd_verify(const json& config, const std::optional<std::string>& preset);
CommandResult cmd_closure(const json& config, const std::optional<std::string>& preset);

/// Full command-line entry point: parses arguments, reads the config, writes outputs.
int run_cli(int argc, char** argv);

}  // namespace pointlab::cli
