#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace stdiff::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// First 16 hex digits of sha256 over the canonical (key-sorted, compact)
/// dump of the config.
std::string run_id_for(const nlohmann::json& config);

struct ArtifactEntry {
  std::string path;  // relative to the output directory
  std::string sha256;
};

struct RunManifest {
  std::string run_id;
  std::string tool_version{kToolVersion};
  double wall_clock_seconds = 0.0;
  std::vector<ArtifactEntry> files;

  nlohmann::json to_json() const;
};

/// Checksums every listed file (relative to `dir`) and writes manifest.json.
RunManifest write_manifest(const std::filesystem::path& dir, const std::string& run_id,
                           const std::vector<std::string>& files, double wall_clock_seconds);

}  // namespace stdiff::cli
