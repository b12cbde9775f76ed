#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sumdim/cellset.hpp"
#include "sumdim/generators.hpp"
#include "sumdim/powerfit.hpp"

namespace sumdim::box {

struct LevelCount {
  int level = 0;
  std::uint64_t count = 0;
};

// Lower bound the fitted slope is compared against: pass <=> slope >= value - tolerance.
struct BoundCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.05;
};

struct ExperimentResult {
  std::string e_desc, k_desc;
  int base = 0;
  std::vector<LevelCount> sum_counts, e_counts, k_counts;
  core::LogLogFit fit;
  BoundCheck bound;
  bool pass = false;
};

// Box-counting slopes of |rasterize(gE) + rasterize(gK)| over the level window.
ExperimentResult dim_sumset_experiment(const Generator& gE, const Generator& gK, int b,
                                       std::span<const int> levels, BoundCheck bound);

// C_a + C_b on the base-2 grid (base 2 is neutral between the two ratios).
ExperimentResult ca_sum_experiment(double a, double b_ratio, std::span<const int> levels,
                                   BoundCheck bound);

// One-dimensional growth check on the line: lhs = m(F + K_L) vs rhs = m(F)^gamma / 2
// where K_L is the level-L cover of the digit set and gamma its certified growth
// exponent (computed here by exhaustive search over Z_base).
struct MassGrowthResult {
  double gamma = 0.0;
  double lhs = 0.0, rhs = 0.0;
  bool pass = false;
};
MassGrowthResult mass_growth_experiment(const core::DigitCantorSpec& spec, const core::CellSet& F,
                                        int L);

// sqrt(m(K-K) m(E)) <= m(K+E) with a one-cell-layer discretization slack
// subtracted from m(K-K) inside the square root.
struct Est6Result {
  double kk_measure = 0.0, e_measure = 0.0;
  double lhs = 0.0, rhs = 0.0, slack = 0.0;
  bool pass = false;
};
Est6Result est6_experiment(const Generator& gK, const Generator& gE, int b, int L);

}  // namespace sumdim::box
