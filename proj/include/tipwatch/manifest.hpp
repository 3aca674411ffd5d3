#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tipwatch {

inline constexpr std::string_view kToolVersion = "0.3.0";

/// Sidecar record written next to every CLI output file.
struct RunManifest {
  std::string subcommand;
  std::string config_path;
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  /// FNV-1a of the canonical configuration text, as 16 hex digits.
  std::string config_hash;
  std::string tool_version{kToolVersion};
  /// Canonical configuration text that was hashed.
  std::string config_text;

  [[nodiscard]] std::string to_json() const;
};

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::string hex64(std::uint64_t value);

/// <output>.manifest.json
std::filesystem::path manifest_path(const std::filesystem::path& output);
void write_manifest(const RunManifest& manifest, const std::filesystem::path& output);

}  // namespace tipwatch
