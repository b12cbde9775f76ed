#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sumdim/bounds.hpp"
#include "sumdim/experiments.hpp"
#include "sumdim/generators.hpp"

namespace sumdim::io {

struct BoxdimConfig {
  box::Generator e, k;
  int base = 3;
  std::vector<int> levels;
  box::BoundCheck bound;  // name "none" when the config gives no target
  std::vector<std::string> warnings;
  std::string text;  // raw file contents (hashed into the manifest)
};

// Schema-validated load; unknown keys rejected, levels normalized ascending
// (with a warning when reordered or deduplicated).
BoxdimConfig load_boxdim_config(const std::filesystem::path& path);

bounds::Scenario load_scenario(const std::filesystem::path& path, std::string* raw_text = nullptr);

}  // namespace sumdim::io
