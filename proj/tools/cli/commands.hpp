#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace arcs::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kInputError = 3, kStageError = 4, kEndpointError = 5 };

struct CommandOptions {
  /// `label`: label every segment instead of the filtered ones.
  bool all_segments = false;
  /// `label`: also write the all-vs-filtered over-prediction report.
  bool overprediction = false;
};

const std::vector<std::string>& command_names();

/// Runs one pipeline stage. Throws the underlying module error on failure.
void run_command(const std::string& command, const PipelineConfig& config, const CommandOptions& options,
                 std::ostream& log);

/// Exit status for an exception escaping run_command.
int exit_code_for(const std::exception& e);

/// run_command with errors printed to `log` and mapped to an exit status.
int run_guarded(const std::string& command, const PipelineConfig& config, const CommandOptions& options,
                std::ostream& log);

}  // namespace arcs::cli
