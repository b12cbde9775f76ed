#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sumdim/group.hpp"
#include "sumdim/rng.hpp"

using namespace sumdim;

namespace {

// Oracle: growth exponent by direct enumeration with std::set arithmetic,
// no bit tricks shared with the implementation.
double brute_gamma(std::uint32_t m, const std::vector<std::uint32_t>& S) {
  double best = 0.0;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << m); ++mask) {
    std::set<std::uint32_t> E, sum;
    for (std::uint32_t i = 0; i < m; ++i)
      if (mask >> i & 1) E.insert(i);
    for (auto e : E)
      for (auto s : S) sum.insert((e + s) % m);
    if (sum.size() == m) continue;
    double ratio = std::log(double(sum.size()) / m) / std::log(double(E.size()) / m);
    best = std::max(best, ratio);
  }
  return best;
}

}  // namespace

TEST_CASE("exhaustive search matches the set-arithmetic oracle") {
  struct Case {
    std::uint32_t m;
    std::vector<std::uint32_t> S;
  };
  const Case cases[] = {
      {3, {0, 2}}, {3, {0, 1}},    {5, {0, 1}},       {5, {0, 2}},    {7, {0, 1, 3}},
      {8, {0, 4}}, {9, {0, 2, 6}}, {10, {0, 3, 6, 9}}, {12, {0, 3, 6}}, {11, {0, 1, 2}},
  };
  for (const auto& c : cases) {
    auto cert = group::best_gamma(c.m, c.S);
    CHECK(cert.exhaustive);
    CHECK(cert.gamma_star == doctest::Approx(brute_gamma(c.m, c.S)).epsilon(1e-12));
  }
}

TEST_CASE("closed-form exponents") {
  const double g3 = 1.0 - std::log(2.0) / std::log(3.0);
  CHECK(group::best_gamma(3, std::vector<std::uint32_t>{0, 2}).gamma_star ==
        doctest::Approx(g3).epsilon(1e-13));
  CHECK(group::best_gamma(3, std::vector<std::uint32_t>{0, 1}).gamma_star ==
        doctest::Approx(g3).epsilon(1e-13));
  // |S| = n-1 family
  for (int n = 3; n <= 12; ++n) {
    std::vector<std::uint32_t> S;
    for (int i = 0; i < n - 1; ++i) S.push_back(std::uint32_t(i));
    auto cert = group::best_gamma(std::uint32_t(n), S);
    CHECK(cert.gamma_star ==
          doctest::Approx(1.0 - std::log(n - 1.0) / std::log(double(n))).epsilon(1e-9));
    CHECK(cert.witness.popcount() == 1);
  }
}

TEST_CASE("gamma* is invariant under translation and unit scaling of S") {
  const std::vector<std::uint32_t> S{0, 2, 6, 8};
  const double base = group::best_gamma(9, S).gamma_star;

  std::vector<std::uint32_t> shifted;
  for (auto s : S) shifted.push_back((s + 5) % 9);
  CHECK(group::best_gamma(9, shifted).gamma_star == doctest::Approx(base).epsilon(1e-12));

  std::vector<std::uint32_t> scaled;  // unit 2 in Z_9
  for (auto s : S) scaled.push_back((s * 2) % 9);
  CHECK(group::best_gamma(9, scaled).gamma_star == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("gamma* lies in [0, 1] and witnesses reproduce their ratio") {
  rng::Rng g(99, 0);
  for (int trial = 0; trial < 20; ++trial) {
    std::uint32_t m = 4 + std::uint32_t(g.below(9));  // 4..12
    std::vector<std::uint32_t> S{0};
    for (std::uint32_t v = 1; v < m; ++v)
      if (g.uniform01() < 0.4) S.push_back(v);
    auto cert = group::best_gamma(m, S);
    CHECK(cert.gamma_star >= 0.0);
    CHECK(cert.gamma_star <= 1.0 + 1e-12);
    if (!cert.unconstrained) {
      auto r = group::ratio(cert.witness, S);
      REQUIRE(r.has_value());
      CHECK(*r == doctest::Approx(cert.gamma_star).epsilon(1e-12));
    }
  }
}

TEST_CASE("unit-rotation dedup does not change the exponent") {
  const std::vector<std::uint32_t> S{0, 2, 3};
  auto a = group::best_gamma(11, S, group::ExhaustiveMode{false});
  auto b = group::best_gamma(11, S, group::ExhaustiveMode{true});
  CHECK(a.gamma_star == doctest::Approx(b.gamma_star).epsilon(1e-13));
}

TEST_CASE("random search recovers the exhaustive optimum on small groups") {
  const std::vector<std::uint32_t> S{0, 2, 5};
  auto ex = group::best_gamma(10, S);
  auto rd = group::best_gamma(10, S, group::RandomMode{20000, 12345});
  CHECK_FALSE(rd.exhaustive);
  CHECK(rd.gamma_star == doctest::Approx(ex.gamma_star).epsilon(1e-12));
}

TEST_CASE("level lifting preserves the exponent for the middle-thirds digits") {
  const core::DigitCantorSpec spec(3, {0, 2});
  CHECK(group::level_digit_set(spec, 1) == std::vector<std::uint32_t>{0, 2});
  CHECK(group::level_digit_set(spec, 2) == std::vector<std::uint32_t>{0, 2, 6, 8});

  const double g1 = group::best_gamma(3, group::level_digit_set(spec, 1)).gamma_star;
  const double g2 = group::best_gamma(9, group::level_digit_set(spec, 2)).gamma_star;
  CHECK(g2 == doctest::Approx(g1).epsilon(1e-12));
}

TEST_CASE("digit-set search flags the n = 5 example") {
  const double target = 1.0 - std::log(2.0) / std::log(5.0);
  auto entries = group::search_digit_sets(5, 2, target);
  CHECK(entries.size() == 4);  // 0 is forced, 4 choices for the second digit
  int flagged = 0;
  for (const auto& e : entries) {
    CHECK(e.S.size() == 2);
    CHECK(e.S[0] == 0);
    if (e.flagged) ++flagged;
  }
  CHECK(flagged >= 1);
}

TEST_CASE("group subset plumbing") {
  auto E = group::GroupSubset::from_members(9, std::vector<std::uint32_t>{0, 2});
  CHECK(E.mask_hex() == "0x5");
  CHECK(E.popcount() == 2);
  const std::vector<std::uint32_t> S{0, 2, 6, 8};
  auto sum = group::cyclic_sumset(E, S);
  CHECK(sum.popcount() == 6);  // {0,1,2,4,6,8}
  for (std::uint32_t v : {0u, 1u, 2u, 4u, 6u, 8u}) CHECK(sum.test(v));

  auto empty = group::GroupSubset(9);
  CHECK_THROWS_AS((void)group::ratio(empty, S), std::invalid_argument);
}

TEST_CASE("mass growth check holds across 100 seeds") {
  const core::DigitCantorSpec spec(3, {0, 2});
  const double gamma = group::best_gamma(3, std::vector<std::uint32_t>{0, 2}).gamma_star;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto check = group::random_mass_growth_check(spec, 3, gamma, 200, seed);
    CHECK(check.pass());
  }
}
