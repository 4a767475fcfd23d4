#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace rangekit {

inline constexpr const char* kToolVersion = "0.1.0";

struct InputDigest {
  std::string path;
  std::string sha256;
};

/// Provenance written next to each output artifact as `<artifact>.manifest.json`.
struct RunManifest {
  std::string tool_version = kToolVersion;
  std::vector<std::string> command;
  std::vector<InputDigest> inputs;
  std::string parameters_json = "{}";  // fully resolved parameters
  std::string started_utc;
  std::string finished_utc;
};

std::string sha256_file(const std::filesystem::path& path);
std::string utc_timestamp();

std::string manifest_to_json(const RunManifest& manifest);
/// Returns the path written.
std::filesystem::path write_manifest(const std::filesystem::path& artifact, const RunManifest& manifest);

}  // namespace rangekit
