#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "doctest.h"
#include "sumdim/powerfit.hpp"

using namespace sumdim;

TEST_CASE("exact geometric counts give exact slopes") {
  // counts 2^L on a base-3 grid: slope log2/log3, perfect fit
  std::vector<std::pair<int, std::uint64_t>> pts;
  for (int L = 1; L <= 10; ++L) pts.emplace_back(L, std::uint64_t(1) << L);
  auto fit = core::fit_dimension(pts, 3);
  CHECK(fit.slope == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));

  // counts 6^L: slope 1 + log2/log3
  pts.clear();
  std::uint64_t c = 1;
  for (int L = 1; L <= 8; ++L) {
    c *= 6;
    pts.emplace_back(L, c);
  }
  fit = core::fit_dimension(pts, 3);
  CHECK(fit.slope == doctest::Approx(1.0 + std::log(2.0) / std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("constant counts fit slope zero with r2 one") {
  std::vector<std::pair<int, std::uint64_t>> pts;
  for (int L = 2; L <= 7; ++L) pts.emplace_back(L, 19);
  auto fit = core::fit_dimension(pts, 2);
  CHECK(fit.slope == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(fit.r2 == 1.0);
}

TEST_CASE("intercept recovers the prefactor") {
  // count = 7 * 9^L on base 3: slope 2, intercept ln 7
  std::vector<std::pair<int, std::uint64_t>> pts;
  std::uint64_t c = 7;
  for (int L = 1; L <= 6; ++L) {
    c *= 9;
    pts.emplace_back(L, c);
  }
  auto fit = core::fit_dimension(pts, 3);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-10));
}

TEST_CASE("generic power law fit") {
  std::vector<std::pair<double, double>> xy;
  for (double x : {0.5, 1.0, 2.5, 7.0, 31.0}) xy.emplace_back(x, 3.0 * std::pow(x, -1.5));
  auto fit = core::fit_power_law(xy);
  CHECK(fit.exponent == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
}
