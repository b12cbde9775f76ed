#include "sumdim/powerfit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace sumdim::core {

PowerFit fit_power_law(std::span<const std::pair<double, double>> xy) {
  if (xy.size() < 2) throw std::invalid_argument("power-law fit needs at least two points");
  double sx = 0, sy = 0;
  for (auto [x, y] : xy) {
    if (!(x > 0.0) || !(y > 0.0))
      throw std::invalid_argument("power-law fit needs strictly positive data");
    sx += std::log(x);
    sy += std::log(y);
  }
  double n = double(xy.size());
  double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : xy) {
    double dx = std::log(x) - mx, dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("power-law fit needs at least two distinct x");
  PowerFit f;
  f.exponent = sxy / sxx;
  f.intercept = my - f.exponent * mx;
  f.r2 = syy == 0.0 ? 1.0 : std::min(1.0, (sxy * sxy) / (sxx * syy));  // rounding can nudge past 1
  return f;
}

LogLogFit fit_dimension(std::span<const std::pair<int, std::uint64_t>> level_counts, int base) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  std::set<int> levels;
  for (auto [L, N] : level_counts) {
    if (N == 0) throw std::invalid_argument("zero count at level " + std::to_string(L));
    levels.insert(L);
  }
  if (levels.size() < 2)
    throw std::invalid_argument("dimension fit needs counts at >= 2 distinct levels");

  LogLogFit fit;
  fit.base = base;
  fit.points.assign(level_counts.begin(), level_counts.end());
  double lb = std::log(double(base));
  double sx = 0, sy = 0;
  double n = double(level_counts.size());
  for (auto [L, N] : level_counts) {
    sx += L * lb;
    sy += std::log(double(N));
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (auto [L, N] : level_counts) {
    double dx = L * lb - mx, dy = std::log(double(N)) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : std::min(1.0, (sxy * sxy) / (sxx * syy));
  return fit;
}

}  // namespace sumdim::core
