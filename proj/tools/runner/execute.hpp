#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "runner/config.hpp"

namespace sublinear::runner {

enum ExitCode : int { kSuccess = 0, kError = 1, kNotConverged = 2 };

struct ExecuteOptions {
  std::optional<Command> command;  ///< overrides the config's command
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::uint64_t> seed;
};

struct ExecuteResult {
  int exit_code = kSuccess;
  std::string message;
  nlohmann::ordered_json report;
  std::vector<std::filesystem::path> files;
};

/// Runs one command and writes fields plus the JSON report. Errors are
/// reported through `exit_code`/`message` (and the report when possible);
/// nothing is thrown for module failures.
ExecuteResult execute(const RunConfig& config, const ExecuteOptions& options = {});
ExecuteResult execute(const std::filesystem::path& config_path, const ExecuteOptions& options = {});

}  // namespace sublinear::runner
