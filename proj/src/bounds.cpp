#include "sumdim/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sumdim::bounds {

namespace {

void check_dims(double alpha, double beta, double d) {
  if (!(d >= 1.0)) throw std::invalid_argument("ambient dimension must be >= 1");
  if (!(alpha >= 0.0 && alpha <= d)) throw std::invalid_argument("alpha must lie in [0, d]");
  if (!(beta >= 0.0 && beta <= d)) throw std::invalid_argument("beta must lie in [0, d]");
}

}  // namespace

Rat::Rat(long long n) : num(n), den(1) {}

Rat::Rat(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rat operator+(Rat a, Rat b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
Rat operator-(Rat a, Rat b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
Rat operator/(Rat a, Rat b) {
  if (b.num == 0) throw std::invalid_argument("division by zero");
  return Rat(a.num * b.den, a.den * b.num);
}

double trivial_bound(double alpha, double beta) { return std::max(alpha, beta); }

double minkowski_curve_bound(double beta) {
  if (!(beta >= 0.0 && beta <= 2.0)) throw std::invalid_argument("beta must lie in [0, 2]");
  return 1.0 + beta / 2.0;
}

double minkowski_general_bound(double alpha, double beta, double d) {
  check_dims(alpha, beta, d);
  return alpha + beta - alpha * beta / d;
}

double growth_to_dimension(double gamma, double beta, double d) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0, 1]");
  check_dims(0.0, beta, d);
  return d * (1.0 - gamma) + gamma * beta;
}

double salem_bound(double alpha, double beta, double d) {
  check_dims(alpha, beta, d);
  return std::min(alpha + beta, d);
}

double fourier_decay_bound(double s, double beta, double d) {
  if (!(s >= 0.0 && s <= d)) throw std::invalid_argument("decay exponent must lie in [0, d]");
  check_dims(0.0, beta, d);
  return std::min(beta + s, d);
}

double convolution_bound(double p, double q, double d, double beta) {
  if (!(1.0 < p && p < q)) throw std::invalid_argument("exponents must satisfy 1 < p < q");
  double pp = p / (p - 1.0);
  double qp = q / (q - 1.0);
  return qp * (d / p - d / q + beta / pp);
}

Rat convolution_bound_exact(Rat p, Rat q, Rat d, Rat beta) {
  Rat one(1);
  Rat pp = p / (p - one);
  Rat qp = q / (q - one);
  return qp * (d / p - d / q + beta / pp);
}

std::pair<double, double> triangle_coefficients(double p, double q, double alpha, double d) {
  if (!(alpha >= 0.0 && alpha < d)) throw std::invalid_argument("alpha must lie in [0, d)");
  double x = 1.0 / p, y = 1.0 / q;
  double cx = d / (2.0 * d - alpha), cy = (d - alpha) / (2.0 * d - alpha);
  // (x, y) = s (1,1) + t (cx, cy); degenerate when alpha = 0 (cx = cy)
  if (std::fabs(cx - cy) < 1e-15) {
    double s = y, t = (x - y) >= 0.0 ? (x - y) / cx : -1.0;
    return {s, t};
  }
  double t = (x - y) / (cx - cy);
  double s = x - t * cx;
  return {s, t};
}

bool triangle_membership(double p, double q, double alpha, double d) {
  auto [s, t] = triangle_coefficients(p, q, alpha, d);
  const double eps = 1e-12;
  return s >= -eps && t >= -eps && s + t <= 1.0 + eps;
}

double mass_growth_exponent(double p, double q) {
  if (!(1.0 < p && p <= q)) throw std::invalid_argument("exponents must satisfy 1 < p <= q");
  double pp = p / (p - 1.0);
  double qp = q / (q - 1.0);
  return qp / pp;
}

FiniteTypeR3 finite_type_r3_bound(double beta) {
  FiniteTypeR3 out;
  if (beta > 0.0 && beta <= 2.0) {
    out.hypothesis_ok = true;
    out.value = std::min(beta + 1.0, 3.0);
  } else {
    out.hypothesis_ok = false;
    out.note = "hypothesis violated: requires 0 < beta <= 2";
  }
  return out;
}

MomentCurveBounds moment_curve_bounds(int d, double beta) {
  if (d < 3) throw std::invalid_argument("moment curve bounds require d >= 3");
  check_dims(0.0, std::min(beta, double(d)), double(d));
  MomentCurveBounds out;
  out.fourier_decay = std::min(beta + 2.0 / double(d), double(d));
  out.christ = std::min((1.0 - 1.0 / double(d)) * beta + 1.0, double(d));
  if (beta <= 2.0) out.projection = beta + 1.0;
  return out;
}

BoundReport tabulate(const Scenario& sc) {
  check_dims(std::min(sc.alpha, double(sc.d)), sc.beta, double(sc.d));
  BoundReport rep;
  rep.scenario = sc;
  double d = double(sc.d);
  double triv = trivial_bound(sc.alpha, sc.beta);

  auto add = [&](std::string name, std::string flavor, double raw, std::string citation) {
    BoundEntry e;
    e.name = std::move(name);
    e.flavor = std::move(flavor);
    e.raw = raw;
    e.effective = std::min(d, std::max(raw, triv));
    e.citation = std::move(citation);
    rep.entries.push_back(std::move(e));
  };

  add("trivial", "minkowski", triv, "monotonicity of covering counts under translation");
  add("trivial", "hausdorff", triv, "monotonicity of Hausdorff measure under translation");

  if (sc.kind == "digit_cantor") {
    if (sc.d != 1) throw std::invalid_argument("digit Cantor scenarios are one-dimensional");
    if (sc.gamma)
      add("cyclic_growth", "minkowski", growth_to_dimension(*sc.gamma, sc.beta, d),
          "covering-count growth transferred from the cyclic-group exponent");
    add("general_sumset", "minkowski", minkowski_general_bound(sc.alpha, sc.beta, d),
        "general box-dimension sum bound a + b - ab/d");
    if (sc.n == 3 && sc.digits == std::vector<int>{0, 2})
      add("cantor_convolution", "hausdorff", convolution_bound(1.5, 3.0, 1.0, sc.beta),
          "L^p-improving convolution with the middle-thirds Cantor measure");
  } else if (sc.kind == "nondegenerate_curve_2d") {
    if (sc.d != 2) throw std::invalid_argument("planar curve scenarios require d = 2");
    add("curve_sum", "minkowski", minkowski_curve_bound(sc.beta),
        "planar curve covering bound 1 + b/2");
    add("general_sumset", "minkowski", minkowski_general_bound(1.0, sc.beta, d),
        "general box-dimension sum bound a + b - ab/d");
  } else if (sc.kind == "nondegenerate_k_surface") {
    if (!(sc.k >= 1 && sc.k < sc.d)) throw std::invalid_argument("surface needs 1 <= k < d");
    add("surface_sum", "minkowski", minkowski_general_bound(double(sc.k), sc.beta, d),
        "nondegenerate k-surface transport bound with a = k");
  } else if (sc.kind == "salem") {
    add("salem_sum", "hausdorff", salem_bound(sc.alpha, sc.beta, d),
        "energy bound against a Salem measure");
  } else if (sc.kind == "fourier_decay") {
    add("decay_sum", "hausdorff", fourier_decay_bound(sc.decay_s, sc.beta, d),
        "energy bound from |mu_hat|^2 decay of order s");
  } else if (sc.kind == "finite_type_curve_r3") {
    if (sc.d != 3) throw std::invalid_argument("finite-type curve scenarios require d = 3");
    auto ft = finite_type_r3_bound(sc.beta);
    if (ft.value)
      add("finite_type_curve", "hausdorff", *ft.value,
          "Sobolev smoothing of the curve convolution in R^3");
  } else if (sc.kind == "moment_curve") {
    auto mb = moment_curve_bounds(sc.d, sc.beta);
    add("moment_decay", "hausdorff", mb.fourier_decay,
        "worst-direction Fourier decay of the moment curve");
    add("moment_smoothing", "hausdorff", mb.christ,
        "convolution smoothing along the moment curve");
    if (mb.projection)
      add("moment_projection", "hausdorff", *mb.projection,
          "projection of the curve sum onto a generic line");
  } else if (sc.kind == "convolution") {
    add("convolution_sum", "hausdorff", convolution_bound(sc.p, sc.q, d, sc.beta),
        "L^p -> L^q improving convolution estimate");
  } else if (sc.kind != "generic") {
    throw std::invalid_argument("unknown scenario kind: " + sc.kind);
  }

  rep.best_minkowski = 0.0;
  rep.best_hausdorff = 0.0;
  for (const auto& e : rep.entries) {
    if (e.flavor == "minkowski") rep.best_minkowski = std::max(rep.best_minkowski, e.effective);
    if (e.flavor == "hausdorff") rep.best_hausdorff = std::max(rep.best_hausdorff, e.effective);
  }
  return rep;
}

}  // namespace sumdim::bounds
