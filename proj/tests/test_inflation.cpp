#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "sumdim/inflation.hpp"
#include "sumdim/rng.hpp"

using namespace sumdim;

TEST_CASE("signed-sum maps render exactly") {
  CHECK(infl::format_map(infl::build_inflation(2, 1)) == "(x2 - x1)");
  CHECK(infl::format_map(infl::build_inflation(3, 2)) == "(x3 - x1, x3 - x2)");
  CHECK(infl::format_map(infl::build_inflation(4, 3)) == "(x4 - x1, x4 - x2, x4 - x3)");
  CHECK(infl::format_map(infl::build_inflation(5, 2)) == "(x5 + x2 - x1, x5 + x4 - x3)");
  CHECK_THROWS_AS((void)infl::build_inflation(3, 3), std::invalid_argument);
  CHECK_THROWS_AS((void)infl::build_inflation(9, 2), std::invalid_argument);
}

TEST_CASE("map structure: disjoint pieces with the expected row sums") {
  for (int d = 2; d <= 8; ++d)
    for (int k = 1; k < d; ++k) {
      auto s = infl::build_inflation(d, k);
      CHECK(s.q == d / k);
      CHECK(s.r == d % k);
      for (int j = 0; j < k; ++j) {
        int sp = 0, spp = 0;
        for (int i = 0; i < d; ++i) {
          CHECK((s.Tp[j][i] == 0 || s.Tpp[j][i] == 0));
          CHECK(s.T[j][i] == s.Tp[j][i] + s.Tpp[j][i]);
          sp += s.Tp[j][i];
          spp += s.Tpp[j][i];
        }
        CHECK(sp == s.q - 2);
        if (s.r > 0) CHECK(spp == s.n[std::size_t(j)] + 1);
      }
    }
}

TEST_CASE("transport matrix is unimodular with a unit-lower second block") {
  for (int d = 2; d <= 8; ++d)
    for (int k = 1; k < d; ++k) {
      CAPTURE(d);
      CAPTURE(k);
      auto plan = infl::build_transport(infl::build_inflation(d, k));
      CHECK(std::fabs(plan.abs_det - 1.0) <= 1e-9);
      CHECK(plan.det_ok);
      CHECK(plan.block_unit_lower);
      int kr = k * (d % k);
      CHECK(int(plan.second_block.size()) == kr);
      // every slab is a k-slab and the second class has exactly kr parameters
      int second = 0;
      for (const auto& slab : plan.slabs) CHECK(int(slab.coords.size()) == k);
      for (int c : plan.param_class) second += c == 2 ? 1 : 0;
      CHECK(second == kr);
    }
}

TEST_CASE("a singleton difference map transports to the identity block") {
  auto plan = infl::build_transport(infl::build_inflation(5, 2));
  REQUIRE(plan.second_block.size() == 2);
  CHECK(plan.second_block[0] == std::vector<int>{1, 0});
  CHECK(plan.second_block[1] == std::vector<int>{0, 1});
}

TEST_CASE("degeneracy screen for the plain head-sum map") {
  CHECK(infl::psi0_degeneracy_check(2, 1));
  CHECK(infl::psi0_degeneracy_check(4, 2));
  CHECK(infl::psi0_degeneracy_check(5, 4));
  CHECK_FALSE(infl::psi0_degeneracy_check(5, 2));
  CHECK_FALSE(infl::psi0_degeneracy_check(6, 2));
  CHECK_FALSE(infl::psi0_degeneracy_check(6, 3));
  CHECK_FALSE(infl::psi0_degeneracy_check(8, 5));
  CHECK_THROWS_AS((void)infl::psi0_degeneracy_check(3, 3), std::invalid_argument);
}

TEST_CASE("occupied image volume separates curved from flat surfaces") {
  auto spec = infl::build_inflation(2, 1);

  // difference set of the unit parabola arc has area 2/3
  double parab = infl::nondegeneracy_estimate("parabola", spec, 8, 400000, 11);
  CHECK(parab > 0.62);
  CHECK(parab < 0.74);

  // difference set of the two-segment corner has area exactly 2
  double corner = infl::nondegeneracy_estimate("k0_corner", spec, 6, 400000, 11);
  CHECK(corner == doctest::Approx(2.0).epsilon(0.05));

  // a flat segment differences into a line: vanishing area
  double flat = infl::nondegeneracy_estimate("segment", spec, 8, 400000, 11);
  CHECK(flat < 0.05);

  CHECK_THROWS_AS(
      (void)infl::nondegeneracy_estimate("helix", spec, 8, 1000, 1), std::invalid_argument);
  CHECK_THROWS_AS(
      (void)infl::nondegeneracy_estimate("parabola", spec, 0, 1000, 1), std::invalid_argument);
  CHECK_THROWS_AS(
      (void)infl::nondegeneracy_estimate("parabola", infl::build_inflation(3, 2), 4, 1000, 1),
      std::invalid_argument);
}

TEST_CASE("occupied volume grows with the sample budget") {
  auto spec = infl::build_inflation(2, 1);
  double lo = 0.0, hi = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    lo += infl::nondegeneracy_estimate("parabola", spec, 8, 50000, seed);
    hi += infl::nondegeneracy_estimate("parabola", spec, 8, 200000, seed);
  }
  CHECK(lo < hi);
}

TEST_CASE("centered slab pushforward stays below Lebesgue on random boxes") {
  auto plan = infl::build_transport(infl::build_inflation(2, 1));
  auto boxes = infl::random_image_boxes(plan, 10, 77);
  CHECK(boxes.size() == 10);
  for (const auto& b : boxes) {
    REQUIRE(b.lo.size() == 2);
    REQUIRE(b.hi.size() == 2);
    for (std::size_t i = 0; i < b.lo.size(); ++i) CHECK(b.lo[i] < b.hi[i]);
  }
  auto rep = infl::mc_pushforward_check(plan, boxes, 20000, 78);
  CHECK(rep.entries.size() == 10);
  CHECK(rep.pass);
  for (const auto& e : rep.entries) {
    CHECK(e.vol > 0.0);
    CHECK(e.estimate <= e.vol + 3.0 * e.se);
  }
  CHECK_THROWS_AS((void)infl::mc_pushforward_check(plan, boxes, 500, 1), std::invalid_argument);
}

TEST_CASE("box integral behaves like a measure") {
  auto plan = infl::build_transport(infl::build_inflation(2, 1));
  std::vector<double> lo{-0.1, -0.1}, hi{0.1, 0.1};
  double small = infl::lemma1_box_integral(plan, lo, hi, 50000, 5);
  std::vector<double> LO{-0.2, -0.2}, HI{0.2, 0.2};
  double big = infl::lemma1_box_integral(plan, LO, HI, 50000, 5);
  CHECK(small >= 0.0);
  CHECK(big > small);
  std::vector<double> bad_hi{-0.2, 0.1};
  CHECK(infl::lemma1_box_integral(plan, lo, bad_hi, 1000, 5) == 0.0);
}

TEST_CASE("superadditive growth exponent of the slab product integral") {
  auto plan = infl::build_transport(infl::build_inflation(2, 1));
  auto probe = infl::lemma1_exponent_probe(plan, 4, 20000, 9);
  CHECK(probe.points.size() == 5);
  CHECK(probe.target == doctest::Approx(1.9));
  CHECK(probe.exponent > 1.8);
  CHECK(probe.exponent < 2.2);
  CHECK(probe.pass);
}
