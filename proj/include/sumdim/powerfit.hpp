#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sumdim::core {

// Least-squares fit of ln(count) against level * ln(base).  The slope is the
// box-counting dimension estimate; r2 is the squared correlation of the fit
// (defined as 1 for exactly constant counts).
struct LogLogFit {
  int base = 2;
  std::vector<std::pair<int, std::uint64_t>> points;  // (level, count)
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LogLogFit fit_dimension(std::span<const std::pair<int, std::uint64_t>> level_counts, int base);

// Generic log-log slope fit of y against x (both already in log scale is the
// caller's concern: here y>0, x>0 and the fit runs on (ln x, ln y)).
struct PowerFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

PowerFit fit_power_law(std::span<const std::pair<double, double>> xy);

}  // namespace sumdim::core
