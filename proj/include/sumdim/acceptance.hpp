#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace sumdim::accept {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// The thirteen seeded verification criteria, in order.  `deep` additionally
// runs the level-3 exhaustive lift (minutes instead of seconds).
std::vector<CriterionResult> run_criteria(std::uint64_t seed, bool deep);

bool all_pass(const std::vector<CriterionResult>& results);

// results/criterion_NN.json + results/summary.json under outdir; byte-stable
// for fixed inputs.
void write_artifacts(const std::vector<CriterionResult>& results, std::uint64_t seed, bool deep,
                     const std::filesystem::path& outdir);

}  // namespace sumdim::accept
