#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "sumdim/experiments.hpp"
#include "sumdim/generators.hpp"
#include "sumdim/group.hpp"
#include "sumdim/rng.hpp"

using namespace sumdim;

namespace {

box::Generator cantor3() {
  return box::Generator{box::DigitCantorGen{core::DigitCantorSpec(3, {0, 2})}};
}

}  // namespace

TEST_CASE("digit Cantor rasterization is exact") {
  auto g = cantor3();
  for (int L = 1; L <= 7; ++L) {
    auto cs = box::rasterize(g, 3, L);
    CHECK(cs.count() == (std::uint64_t(1) << L));
    // cells agree with the lifted digit values
    auto digits = group::level_digit_set(core::DigitCantorSpec(3, {0, 2}), L);
    REQUIRE(cs.count() == digits.size());
    for (std::size_t i = 0; i < digits.size(); ++i) {
      std::int64_t want = digits[i];
      CHECK(cs.cell(i)[0] == want);
    }
  }
  CHECK_THROWS(box::rasterize(g, 2, 3));  // grid base must equal the digit base
}

TEST_CASE("ratio Cantor cover contains the exact middle-thirds cells") {
  auto exact = box::rasterize(cantor3(), 3, 5);
  auto cover = box::rasterize(box::Generator{box::RatioCantorGen{1.0 / 3.0}}, 3, 5);
  for (std::size_t i = 0; i < exact.count(); ++i) CHECK(cover.contains(exact.cell(i)));
  CHECK(cover.count() <= 3 * exact.count());
}

TEST_CASE("graph and parametric covers have dimension-one slopes") {
  std::vector<std::pair<int, std::uint64_t>> pts;
  auto graph = box::Generator{box::GraphCurveGen{"parabola", 0.0, 1.0}};
  for (int L = 2; L <= 7; ++L) pts.emplace_back(L, box::rasterize(graph, 3, L).count());
  auto fit = core::fit_dimension(pts, 3);
  CHECK(fit.slope > 0.97);
  CHECK(fit.slope < 1.03);

  pts.clear();
  auto par = box::Generator{box::ParametricCurveGen{"parabola", 0.0, 1.0}};
  for (int L = 2; L <= 7; ++L) pts.emplace_back(L, box::rasterize(par, 3, L).count());
  fit = core::fit_dimension(pts, 3);
  CHECK(fit.slope > 0.97);
  CHECK(fit.slope < 1.06);

  // every sampled cell genuinely meets the curve, so it lies in the closed
  // graph cover; sampling may skip cells the curve only clips at a corner
  auto a = box::rasterize(graph, 3, 5);
  auto b = box::rasterize(par, 3, 5);
  for (std::size_t i = 0; i < b.count(); ++i) CHECK(a.contains(b.cell(i)));
  CHECK(10 * b.count() >= 9 * a.count());
}

TEST_CASE("slab-union and product covers") {
  auto k0 = box::rasterize(box::Generator{box::PolygonK0Gen{}}, 3, 2);
  CHECK(k0.count() == 19);  // 2 * 3^2 + 1 cells along the two unit segments

  auto prod = box::make_product(cantor3(), cantor3());
  CHECK(box::ambient_dim(prod) == 2);
  auto cs = box::rasterize(prod, 3, 4);
  CHECK(cs.count() == (std::uint64_t(1) << 4) * (std::uint64_t(1) << 4));
}

TEST_CASE("disk and box covers scale like area and volume") {
  auto disk = box::Generator{box::DiskGen{0.5, 0.5, 0.3}};
  std::vector<std::pair<int, std::uint64_t>> pts;
  // below level ~5 the O(2^L) rim cells still rival the O(4^L) interior
  for (int L = 6; L <= 10; ++L) pts.emplace_back(L, box::rasterize(disk, 2, L).count());
  auto fit = core::fit_dimension(pts, 2);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.05));

  auto bx = box::Generator{box::BoxGen{{0.0, 0.0, 0.0}, 0.5}};
  auto cs = box::rasterize(bx, 2, 3);
  // [0, 0.5]^3 on the 1/8 grid: 4 interior cells per axis plus the closed face
  CHECK(cs.count() == 125);
}

TEST_CASE("sum of the Cantor set with itself fills the interval") {
  std::vector<int> levels{2, 3, 4, 5, 6};
  auto res = box::dim_sumset_experiment(cantor3(), cantor3(), 3, levels,
                                        box::BoundCheck{"full interval", 0.95, 0.05});
  CHECK(res.fit.slope > 0.95);
  CHECK(res.pass);
  // counts track the covered length |[0, 2]| / cell width
  for (const auto& lc : res.sum_counts)
    CHECK(lc.count >= 2 * std::uint64_t(std::pow(3.0, lc.level)));
}

TEST_CASE("plane experiment: Cantor square plus slab union") {
  std::vector<int> levels{3, 4, 5, 6};
  auto prod = box::make_product(cantor3(), cantor3());
  auto res = box::dim_sumset_experiment(prod, box::Generator{box::PolygonK0Gen{}}, 3, levels,
                                        box::BoundCheck{"slab growth", 1.0, 0.1});
  const double target = 1.0 + std::log(2.0) / std::log(3.0);
  CHECK(res.fit.slope == doctest::Approx(target).epsilon(0.05));
  CHECK(res.pass);
}

TEST_CASE("ratio-Cantor sum experiments") {
  std::vector<int> levels{6, 7, 8, 9, 10};
  auto self = box::ca_sum_experiment(0.25, 0.25, levels, box::BoundCheck{"self", 0.7, 0.05});
  CHECK(self.fit.slope == doctest::Approx(std::log(3.0) / std::log(4.0)).epsilon(0.08));

  auto cross = box::ca_sum_experiment(1.0 / 3.0, 0.25, levels, box::BoundCheck{"cross", 0.9, 0.05});
  CHECK(cross.fit.slope > 0.9);
}

TEST_CASE("levels must be ascending and include at least two entries") {
  std::vector<int> bad{4, 3};
  CHECK_THROWS(box::dim_sumset_experiment(cantor3(), cantor3(), 3, bad,
                                          box::BoundCheck{"x", 0.0, 0.0}));
  std::vector<int> single{4};
  CHECK_THROWS(box::dim_sumset_experiment(cantor3(), cantor3(), 3, single,
                                          box::BoundCheck{"x", 0.0, 0.0}));
}

TEST_CASE("line mass growth experiment") {
  const core::DigitCantorSpec spec(3, {0, 2});
  rng::Rng g(7, 3);
  for (int trial = 0; trial < 5; ++trial) {
    // random union of cells in [0, 3^4) on the level-4 grid
    std::vector<std::int64_t> flat;
    for (std::int64_t c = 0; c < 81; ++c)
      if (g.uniform01() < 0.3) flat.push_back(c);
    if (flat.empty()) flat.push_back(1);
    auto F = core::CellSet::from_cells(1, 3, 4, std::move(flat));
    auto res = box::mass_growth_experiment(spec, F, 4);
    CHECK(res.gamma == doctest::Approx(1.0 - std::log(2.0) / std::log(3.0)).epsilon(1e-12));
    CHECK(res.lhs >= res.rhs - 1e-12);
    CHECK(res.pass);
  }
}

TEST_CASE("difference-set estimate on plane covers") {
  auto prod = box::make_product(cantor3(), cantor3());
  auto k0 = box::Generator{box::PolygonK0Gen{}};
  auto res = box::est6_experiment(k0, prod, 3, 5);
  CHECK(res.kk_measure > 0.0);
  CHECK(res.e_measure > 0.0);
  CHECK(res.lhs >= res.rhs - res.slack - 1e-12);
  CHECK(res.pass);

  auto par = box::Generator{box::ParametricCurveGen{"parabola", 0.0, 1.0}};
  auto res2 = box::est6_experiment(par, prod, 3, 5);
  CHECK(res2.pass);
}
