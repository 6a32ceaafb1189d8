#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace stdiff::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailed = 1;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitPrecision = 3;

struct CommandContext {
  std::filesystem::path out_dir = ".";
  unsigned jobs = 1;
  bool dry_run = false;
  std::optional<unsigned> precision_cap;  // upper limit on B
  std::ostream* out = nullptr;            // summary output; stdout when null
  std::ostream* log = nullptr;            // diagnostics; stderr when null
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string run_id;
  nlohmann::json report;
  std::vector<std::string> artifacts;  // relative to out_dir, manifest excluded
};

/// Names accepted in config["command"].
const std::vector<std::string>& command_names();

/// Runs the experiment described by `config` ({"command": ..., "rule": {...},
/// parameters...}). Writes config.json, the command's artifacts and
/// manifest.json into ctx.out_dir (nothing on a dry run). Never throws:
/// malformed configs map to exit 2, precision exhaustion to exit 3.
CommandResult run_command(const nlohmann::json& config, const CommandContext& ctx);

/// Reads STDIFF_PRECISION_CAP, if set.
std::optional<unsigned> precision_cap_from_env();

}  // namespace stdiff::cli
