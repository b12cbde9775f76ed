#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sumdim/bounds.hpp"

using namespace sumdim;
using bounds::Rat;

namespace {
const double kAlpha3 = std::log(2.0) / std::log(3.0);
}

TEST_CASE("rational arithmetic normalizes and reduces") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(1, -2) == Rat(-1, 2));
  CHECK(Rat(3, 2) + Rat(1, 6) == Rat(5, 3));
  CHECK(Rat(3, 2) * Rat(2, 3) == Rat(1));
  CHECK(Rat(1) / Rat(3, 2) == Rat(2, 3));
  CHECK(Rat(7, 3).value() == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(Rat(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::invalid_argument);
}

TEST_CASE("convolution exponent pair (3/2, 3) gives (1 + beta) / 2 exactly") {
  for (int j = 0; j <= 16; ++j) {
    Rat beta(j, 16);
    Rat got = bounds::convolution_bound_exact(Rat(3, 2), Rat(3), Rat(1), beta);
    CHECK(got == (Rat(1) + beta) / Rat(2));
    double dbl = bounds::convolution_bound(1.5, 3.0, 1.0, beta.value());
    CHECK(dbl == doctest::Approx(got.value()).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)bounds::convolution_bound(3.0, 1.5, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS((void)bounds::convolution_bound(1.0, 2.0, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("vertex exponents reproduce the general sumset bound") {
  for (double d : {1.0, 2.0, 3.0}) {
    for (int ia = 1; ia <= 9; ia += 2) {
      double alpha = d * ia / 10.0;
      double p = (2.0 * d - alpha) / d;
      double q = (2.0 * d - alpha) / (d - alpha);
      for (int ib = 0; ib <= 4; ++ib) {
        double beta = d * ib / 4.0;
        double conv = bounds::convolution_bound(p, q, d, beta);
        CHECK(conv ==
              doctest::Approx(bounds::minkowski_general_bound(alpha, beta, d)).epsilon(1e-9));
        // and the growth exponent at the vertex is (d - alpha) / d
        double gamma = bounds::mass_growth_exponent(p, q);
        CHECK(gamma == doctest::Approx((d - alpha) / d).epsilon(1e-12));
        CHECK(bounds::growth_to_dimension(gamma, beta, d) ==
              doctest::Approx(conv).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("the convolution bound beats the trivial one past a critical beta") {
  auto gap = [](double beta) {
    return bounds::convolution_bound(1.5, 3.0, 1.0, beta) - bounds::trivial_bound(kAlpha3, beta);
  };
  REQUIRE(gap(0.0) < 0.0);
  REQUIRE(gap(0.6) > 0.0);
  double lo = 0.0, hi = 0.6;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (gap(mid) < 0.0 ? lo : hi) = mid;
  }
  CHECK(0.5 * (lo + hi) == doctest::Approx(2.0 * kAlpha3 - 1.0).epsilon(1e-12));
}

TEST_CASE("exponent triangle coefficients and membership") {
  auto [s, t] = bounds::triangle_coefficients(1.5, 3.0, kAlpha3, 1.0);
  CHECK(s == doctest::Approx(0.138336).epsilon(1e-4));
  CHECK(t == doctest::Approx(0.723286).epsilon(1e-4));
  CHECK(bounds::triangle_membership(1.5, 3.0, kAlpha3, 1.0));
  CHECK(bounds::triangle_membership(2.0, 2.0, 0.5, 1.0));  // diagonal edge
  CHECK_FALSE(bounds::triangle_membership(5.0, 1.1, 0.5, 1.0));  // 1/q above 1/p
  // degenerate alpha = 0 collapses the triangle to the diagonal segment
  CHECK(bounds::triangle_membership(2.0, 5.0, 0.0, 1.0));
  CHECK_FALSE(bounds::triangle_membership(5.0, 2.0, 0.0, 1.0));
  CHECK_THROWS_AS((void)bounds::triangle_coefficients(1.5, 3.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("closed-form bound families respect their hypotheses") {
  CHECK(bounds::trivial_bound(0.3, 0.8) == 0.8);
  CHECK(bounds::minkowski_curve_bound(1.0) == doctest::Approx(1.5));
  CHECK_THROWS_AS((void)bounds::minkowski_curve_bound(2.5), std::invalid_argument);
  CHECK(bounds::minkowski_general_bound(0.5, 0.5, 1.0) == doctest::Approx(0.75));
  CHECK(bounds::salem_bound(0.6, 0.7, 1.0) == 1.0);
  CHECK(bounds::fourier_decay_bound(0.5, 0.3, 1.0) == doctest::Approx(0.8));
  CHECK_THROWS_AS((void)bounds::growth_to_dimension(0.0, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)bounds::growth_to_dimension(1.2, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)bounds::salem_bound(1.5, 0.5, 1.0), std::invalid_argument);

  auto ft = bounds::finite_type_r3_bound(1.5);
  REQUIRE(ft.hypothesis_ok);
  CHECK(*ft.value == doctest::Approx(2.5));
  CHECK(*bounds::finite_type_r3_bound(2.0).value == doctest::Approx(3.0));
  auto bad = bounds::finite_type_r3_bound(2.5);
  CHECK_FALSE(bad.hypothesis_ok);
  CHECK(bad.note.find("hypothesis violated") != std::string::npos);

  auto mb = bounds::moment_curve_bounds(4, 2.0);
  CHECK(mb.fourier_decay == doctest::Approx(2.5));
  CHECK(mb.christ == doctest::Approx(2.5));
  REQUIRE(mb.projection.has_value());
  CHECK(*mb.projection == doctest::Approx(3.0));
  CHECK_FALSE(bounds::moment_curve_bounds(3, 2.5).projection.has_value());
  CHECK_THROWS_AS((void)bounds::moment_curve_bounds(2, 1.0), std::invalid_argument);
}

TEST_CASE("scenario tabulation: middle-thirds digit set") {
  bounds::Scenario sc;
  sc.d = 1;
  sc.kind = "digit_cantor";
  sc.alpha = kAlpha3;
  sc.beta = 0.4;
  sc.n = 3;
  sc.digits = {0, 2};
  sc.gamma = 1.0 - kAlpha3;
  auto rep = bounds::tabulate(sc);

  bool saw_growth = false, saw_conv = false;
  for (const auto& e : rep.entries) {
    CHECK((e.flavor == "minkowski" || e.flavor == "hausdorff"));
    CHECK(e.effective >= bounds::trivial_bound(sc.alpha, sc.beta) - 1e-12);
    CHECK(e.effective <= 1.0 + 1e-12);
    CHECK_FALSE(e.citation.empty());
    if (e.name == "cyclic_growth") {
      saw_growth = true;
      CHECK(e.raw == doctest::Approx(kAlpha3 + sc.beta - kAlpha3 * sc.beta).epsilon(1e-12));
    }
    if (e.name == "cantor_convolution") {
      saw_conv = true;
      CHECK(e.flavor == "hausdorff");
      CHECK(e.raw == doctest::Approx((1.0 + sc.beta) / 2.0).epsilon(1e-12));
    }
  }
  CHECK(saw_growth);
  CHECK(saw_conv);
  CHECK(rep.best_hausdorff == doctest::Approx(0.7).epsilon(1e-12));

  // below the critical beta the convolution bound is dominated by the trivial one
  sc.beta = 0.2;
  CHECK(bounds::tabulate(sc).best_hausdorff == doctest::Approx(kAlpha3).epsilon(1e-12));
  // and best bounds are monotone in beta
  double prev = 0.0;
  for (double beta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    sc.beta = beta;
    auto r = bounds::tabulate(sc);
    CHECK(r.best_hausdorff >= prev);
    prev = r.best_hausdorff;
  }
}

TEST_CASE("scenario tabulation: remaining kinds") {
  bounds::Scenario curve;
  curve.d = 2;
  curve.kind = "nondegenerate_curve_2d";
  curve.alpha = 1.0;
  curve.beta = 1.0;
  auto rep = bounds::tabulate(curve);
  bool saw = false;
  for (const auto& e : rep.entries)
    if (e.name == "curve_sum") {
      saw = true;
      CHECK(e.raw == doctest::Approx(1.5));
    }
  CHECK(saw);
  CHECK(rep.best_minkowski >= 1.5 - 1e-12);

  bounds::Scenario surf;
  surf.d = 5;
  surf.kind = "nondegenerate_k_surface";
  surf.alpha = 2.0;
  surf.beta = 1.0;
  surf.k = 2;
  CHECK(bounds::tabulate(surf).best_minkowski == doctest::Approx(2.6).epsilon(1e-12));

  bounds::Scenario salem;
  salem.d = 1;
  salem.kind = "salem";
  salem.alpha = 0.5;
  salem.beta = 0.5;
  CHECK(bounds::tabulate(salem).best_hausdorff == doctest::Approx(1.0));

  bounds::Scenario decay;
  decay.d = 1;
  decay.kind = "fourier_decay";
  decay.alpha = 0.5;
  decay.beta = 0.3;
  decay.decay_s = 0.5;
  CHECK(bounds::tabulate(decay).best_hausdorff == doctest::Approx(0.8));

  bounds::Scenario conv;
  conv.d = 1;
  conv.kind = "convolution";
  conv.alpha = kAlpha3;
  conv.beta = 0.5;
  conv.p = 1.5;
  conv.q = 3.0;
  CHECK(bounds::tabulate(conv).best_hausdorff == doctest::Approx(0.75));

  bounds::Scenario moment;
  moment.d = 4;
  moment.kind = "moment_curve";
  moment.alpha = 1.0;
  moment.beta = 2.0;
  CHECK(bounds::tabulate(moment).best_hausdorff == doctest::Approx(3.0));

  bounds::Scenario ft;
  ft.d = 3;
  ft.kind = "finite_type_curve_r3";
  ft.alpha = 1.0;
  ft.beta = 2.5;
  auto ftrep = bounds::tabulate(ft);  // hypothesis fails: only trivial rows
  for (const auto& e : ftrep.entries) CHECK(e.name == "trivial");
}

TEST_CASE("scenario tabulation rejects inconsistent dimensions") {
  bounds::Scenario sc;
  sc.kind = "digit_cantor";
  sc.d = 2;
  sc.alpha = 0.5;
  sc.beta = 0.5;
  CHECK_THROWS_AS((void)bounds::tabulate(sc), std::invalid_argument);
  sc.kind = "nondegenerate_curve_2d";
  sc.d = 3;
  CHECK_THROWS_AS((void)bounds::tabulate(sc), std::invalid_argument);
  sc.kind = "finite_type_curve_r3";
  sc.d = 2;
  CHECK_THROWS_AS((void)bounds::tabulate(sc), std::invalid_argument);
  sc.kind = "nondegenerate_k_surface";
  sc.d = 3;
  sc.k = 0;
  CHECK_THROWS_AS((void)bounds::tabulate(sc), std::invalid_argument);
  sc.kind = "no_such_kind";
  CHECK_THROWS_AS((void)bounds::tabulate(sc), std::invalid_argument);
}
