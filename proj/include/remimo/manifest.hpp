#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace remimo {

/// Provenance record written beside every CSV as <output>.manifest.json:
/// tool version, subcommand, master seed, the fully resolved config, digests
/// of every ingested data file, and row count of the output.
struct RunManifest {
  std::string tool_version;
  std::string subcommand;
  std::uint64_t seed = 0;
  std::string started_utc;
  std::string finished_utc;
  std::vector<std::pair<std::string, std::string>> config; // resolved key/value pairs
  std::vector<std::pair<std::string, std::string>> input_digests; // path -> fnv1a64 hex
  std::string output_path;
  std::size_t output_rows = 0;
};

/// FNV-1a 64-bit digest of a file's bytes, as a fixed-width hex string.
std::string fnv1a64_file_hex(const std::filesystem::path& path);

std::string utc_now_iso8601();

std::string manifest_to_json(const RunManifest& m);

/// Writes <csv_path>.manifest.json atomically next to the output.
void write_manifest(const RunManifest& m, const std::filesystem::path& csv_path);

} // namespace remimo
