#include "sumdim/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sumdim/json_io.hpp"
#include "sumdim/schema.hpp"

namespace sumdim::io {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json parse_text(const std::string& text, const std::filesystem::path& path) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config " + path.string() + " is not valid JSON: " + e.what());
  }
}

}  // namespace

BoxdimConfig load_boxdim_config(const std::filesystem::path& path) {
  BoxdimConfig cfg;
  cfg.text = slurp(path);
  const json j = parse_text(cfg.text, path);

  const auto errs = validate(j, schema("boxdim-config"));
  if (!errs.empty()) {
    std::string msg = "config " + path.string() + " rejected:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw std::invalid_argument(msg);
  }

  cfg.base = j.at("base").get<int>();
  if (cfg.base < 2) throw std::invalid_argument("base must be >= 2");
  cfg.e = parse_generator(j.at("e"));
  cfg.k = parse_generator(j.at("k"));

  cfg.levels = j.at("levels").get<std::vector<int>>();
  auto normalized = cfg.levels;
  std::sort(normalized.begin(), normalized.end());
  normalized.erase(std::unique(normalized.begin(), normalized.end()), normalized.end());
  if (normalized != cfg.levels) {
    cfg.warnings.push_back("levels normalized to ascending unique order");
    cfg.levels = std::move(normalized);
  }
  if (cfg.levels.size() < 2) throw std::invalid_argument("levels must contain at least 2 distinct entries");

  if (j.contains("bound")) {
    cfg.bound.name = j.at("bound").at("name").get<std::string>();
    cfg.bound.value = j.at("bound").at("value").get<double>();
    cfg.bound.tolerance = j.at("bound").value("tolerance", 0.05);
  } else {
    cfg.bound = box::BoundCheck{"none", 0.0, 0.0};
  }
  return cfg;
}

bounds::Scenario load_scenario(const std::filesystem::path& path, std::string* raw_text) {
  const std::string text = slurp(path);
  if (raw_text) *raw_text = text;
  const json j = parse_text(text, path);
  const auto errs = validate(j, schema("scenario"));
  if (!errs.empty()) {
    std::string msg = "scenario " + path.string() + " rejected:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw std::invalid_argument(msg);
  }
  return parse_scenario(j);
}

}  // namespace sumdim::io
