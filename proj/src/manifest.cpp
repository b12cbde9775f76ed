#include "sumdim/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "sumdim/version.hpp"

namespace sumdim::io {

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hash_tag(std::string_view text) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(fnv1a64(text)));
  return buf;
}

std::string iso_utc_now() {
  using namespace std::chrono;
  const auto now = time_point_cast<seconds>(system_clock::now());
  const std::time_t t = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::ordered_json manifest_to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["format"] = "run-manifest/1";
  j["version"] = kVersion;
  j["subcommand"] = m.subcommand;
  j["arguments"] = m.arguments;
  j["seed"] = m.seed;
  j["config_hash"] = m.config_hash;
  j["started_at"] = m.started_at;
  j["finished_at"] = m.finished_at;
  j["outputs"] = m.outputs;
  return j;
}

void write_manifest(const RunManifest& m, const std::filesystem::path& outdir) {
  std::ofstream f(outdir / "manifest.json", std::ios::binary);
  if (!f) throw std::runtime_error("cannot write manifest in " + outdir.string());
  f << manifest_to_json(m).dump(2) << "\n";
}

}  // namespace sumdim::io
