#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sumdim::io {

// Provenance record written next to every run's results.  Timestamps live
// only here, so result files stay byte-stable across repeated seeded runs.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> arguments;
  std::uint64_t seed = 0;
  std::string config_hash = "none";  // "fnv1a:<hex>" of the config text
  std::string started_at, finished_at;  // ISO-8601 UTC
  std::vector<std::string> outputs;     // paths relative to the run directory
};

std::uint64_t fnv1a64(std::string_view text);
std::string hash_tag(std::string_view text);  // "fnv1a:<16 hex digits>"
std::string iso_utc_now();

nlohmann::ordered_json manifest_to_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::filesystem::path& outdir);

}  // namespace sumdim::io
