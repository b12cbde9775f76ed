#include "sumdim/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sumdim/parallel.hpp"
#include "sumdim/rng.hpp"

namespace sumdim::fourier {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double curve_speed(const Curve& c, double t) {
  if (c.name == "parabola") return std::sqrt(1.0 + 4.0 * t * t);
  if (c.name == "segment") return 1.0;
  // moment curve: |(1, 2t, ..., d t^(d-1))|
  double s = 0.0, p = 1.0;
  for (int j = 1; j <= c.d; ++j) {
    double dj = double(j) * p;
    s += dj * dj;
    p *= t;
  }
  return std::sqrt(s);
}

}  // namespace

Curve parabola_curve() { return {2, "parabola", 0.0, 1.0}; }
Curve segment_curve() { return {2, "segment", 0.0, 1.0}; }
Curve moment_curve(int d) {
  if (d < 2 || d > 8) throw std::invalid_argument("moment curve dimension must be in [2, 8]");
  return {d, "moment", 0.0, 1.0};
}

void curve_point(const Curve& c, double t, std::span<double> out) {
  if (int(out.size()) != c.d) throw std::invalid_argument("output span dimension mismatch");
  if (c.name == "parabola") {
    out[0] = t;
    out[1] = t * t;
  } else if (c.name == "segment") {
    out[0] = t;
    out[1] = 0.0;
  } else if (c.name == "moment") {
    double p = 1.0;
    for (int i = 0; i < c.d; ++i) {
      p *= t;
      out[std::size_t(i)] = p;
    }
  } else {
    throw std::invalid_argument("unknown curve: " + c.name);
  }
}

double curve_lipschitz(const Curve& c) {
  double tmax = std::max(std::fabs(c.t0), std::fabs(c.t1));
  if (c.name == "parabola") return std::sqrt(1.0 + 4.0 * tmax * tmax);
  if (c.name == "segment") return 1.0;
  if (c.name == "moment") {
    double s = 0.0, p = 1.0;
    for (int j = 1; j <= c.d; ++j) {
      double dj = double(j) * p;  // |d/dt t^j| at tmax
      s += dj * dj;
      p *= tmax;
    }
    return std::sqrt(s);
  }
  throw std::invalid_argument("unknown curve: " + c.name);
}

int auto_truncation(const core::DigitCantorSpec& spec, double xi, double tol) {
  double axi = std::max(1.0, std::fabs(xi));
  double lead = kTwoPi * double(std::max(1, spec.max_digit())) * axi / double(spec.base - 1);
  int J = 1;
  double tail = lead / double(spec.base);
  while (tail > tol && J < 4096) {
    tail /= double(spec.base);
    ++J;
  }
  return J;
}

cplx cantor_transform(const core::DigitCantorSpec& spec, double xi, int J) {
  if (J < 1) throw std::invalid_argument("truncation level must be >= 1");
  cplx prod = 1.0;
  double u = xi;
  for (int j = 1; j <= J; ++j) {
    u /= double(spec.base);  // repeated division keeps the scale sequence exact
    cplx f = 0.0;
    for (int s : spec.digits) f += std::polar(1.0, -kTwoPi * double(s) * u);
    prod *= f / double(spec.digits.size());
  }
  return prod;
}

cplx curve_transform(const Curve& c, std::span<const double> xi, int M, bool arclength) {
  if (int(xi.size()) != c.d) throw std::invalid_argument("frequency dimension mismatch");
  if (M < 1000) throw std::invalid_argument("quadrature needs M >= 1000 nodes");
  double r = norm2(xi);
  if (r > double(M) / 10.0)
    throw std::invalid_argument("quadrature validity exceeded: |xi| > M/10");
  double h = (c.t1 - c.t0) / double(M);
  std::vector<double> p(std::size_t(c.d));
  cplx acc = 0.0;
  double wsum = 0.0;
  for (int m = 0; m < M; ++m) {
    double t = c.t0 + (double(m) + 0.5) * h;
    curve_point(c, t, p);
    double phase = 0.0;
    for (int i = 0; i < c.d; ++i) phase += xi[std::size_t(i)] * p[std::size_t(i)];
    if (arclength) {
      double w = curve_speed(c, t);
      wsum += w;
      acc += w * std::polar(1.0, -kTwoPi * phase);
    } else {
      acc += std::polar(1.0, -kTwoPi * phase);
    }
  }
  return arclength ? acc / wsum : acc / double(M);
}

cplx MeasureTransform::operator()(std::span<const double> xi) const {
  if (int(xi.size()) != d) throw std::invalid_argument("frequency dimension mismatch");
  switch (kind) {
    case Kind::Cantor:
      return cantor_transform(spec, xi[0], auto_truncation(spec, xi[0]));
    case Kind::Curve: {
      double r = norm2(xi);
      int M = std::max(2048, int(std::ceil(16.0 * curve_lipschitz(curve) * r)));
      return curve_transform(curve, xi, M, arclength);
    }
    case Kind::PointMass:
      return 1.0;
    case Kind::UniformInterval: {
      double x = xi[0];
      if (x == 0.0) return 1.0;
      double s = std::numbers::pi * x;
      return std::polar(std::sin(s) / s, -s);
    }
  }
  return 0.0;
}

cplx MeasureTransform::at(double xi) const { return (*this)(std::span<const double>(&xi, 1)); }

std::string MeasureTransform::describe() const {
  switch (kind) {
    case Kind::Cantor:
      return spec.describe();
    case Kind::Curve:
      return curve.name + (curve.name == "moment" ? ":" + std::to_string(curve.d) : "") +
             (arclength ? " (arclength)" : " (dt)");
    case Kind::PointMass:
      return "point_mass";
    case Kind::UniformInterval:
      return "uniform[0,1)";
  }
  return "";
}

MeasureTransform cantor_measure(const core::DigitCantorSpec& spec) {
  MeasureTransform mt;
  mt.kind = MeasureTransform::Kind::Cantor;
  mt.d = 1;
  mt.spec = spec;
  return mt;
}

MeasureTransform curve_measure(Curve c, bool arclength) {
  MeasureTransform mt;
  mt.kind = MeasureTransform::Kind::Curve;
  mt.d = c.d;
  mt.curve = std::move(c);
  mt.arclength = arclength;
  return mt;
}

MeasureTransform point_mass_measure(int d) {
  MeasureTransform mt;
  mt.kind = MeasureTransform::Kind::PointMass;
  mt.d = d;
  return mt;
}

MeasureTransform uniform_interval_measure() {
  MeasureTransform mt;
  mt.kind = MeasureTransform::Kind::UniformInterval;
  mt.d = 1;
  return mt;
}

DecayFit decay_fit(const MeasureTransform& mt, const DecayFitOptions& opt) {
  std::vector<std::vector<double>> dirs = opt.explicit_directions;
  if (dirs.empty()) {
    if (mt.d == 1) {
      dirs.push_back({1.0});
    } else {
      rng::Rng rng(opt.seed, 7);
      for (int i = 0; i < opt.directions; ++i) {
        std::vector<double> v(std::size_t(mt.d));
        rng.unit_vector(v);
        dirs.push_back(std::move(v));
      }
    }
  }
  for (const auto& v : dirs)
    if (int(v.size()) != mt.d) throw std::invalid_argument("direction dimension mismatch");

  struct Task {
    int group;
    double radius;
  };
  std::vector<Task> tasks;
  std::vector<double> rep;  // representative |xi| per group
  if (!opt.explicit_radii.empty()) {
    for (double r : opt.explicit_radii) {
      tasks.push_back({int(rep.size()), r});
      rep.push_back(r);
    }
  } else {
    if (opt.m1 <= opt.m0 || opt.m0 < 2)
      throw std::invalid_argument("octave range requires m1 > m0 >= 2");
    if (opt.radii < 1) throw std::invalid_argument("need at least one radius per octave");
    for (int m = opt.m0; m <= opt.m1; ++m) {
      rng::Rng rng(opt.seed, 1000 + std::uint64_t(m));
      for (int i = 0; i < opt.radii; ++i)
        tasks.push_back({int(rep.size()), rng.log_uniform(std::pow(2.0, m), std::pow(2.0, m + 1))});
      rep.push_back(std::pow(2.0, double(m) + 0.5));
    }
  }

  std::vector<double> task_sup(tasks.size(), 0.0);
  util::parallel_chunks(int(tasks.size()), [&](int ti) {
    const Task& task = tasks[std::size_t(ti)];
    std::vector<double> xi(std::size_t(mt.d));
    double sup = 0.0;
    for (const auto& dir : dirs) {
      for (int i = 0; i < mt.d; ++i) xi[std::size_t(i)] = task.radius * dir[std::size_t(i)];
      sup = std::max(sup, std::abs(mt(xi)));
    }
    task_sup[std::size_t(ti)] = sup;
  });

  DecayFit fit;
  std::vector<double> group_sup(rep.size(), 0.0);
  for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
    auto g = std::size_t(tasks[ti].group);
    group_sup[g] = std::max(group_sup[g], task_sup[ti]);
  }
  std::vector<std::pair<double, double>> xy;
  for (std::size_t g = 0; g < rep.size(); ++g) {
    fit.sups.push_back({rep[g], group_sup[g]});
    if (group_sup[g] > 0.0) xy.emplace_back(rep[g], group_sup[g]);
  }
  if (xy.size() >= 2) {
    auto pf = core::fit_power_law(xy);
    fit.exponent = -pf.exponent;
    fit.r2 = pf.r2;
  }
  return fit;
}

double energy_partial_sum(const MeasureTransform& mt, double r, int d, double lambda) {
  if (!(r > 0.0 && r < double(d))) throw std::invalid_argument("energy exponent must be in (0, d)");
  if (lambda < 1.0) throw std::invalid_argument("frequency cutoff must be >= 1");
  if (d == 1) {
    std::int64_t top = std::int64_t(lambda);
    double sum = 0.0;
    for (std::int64_t k = 1; k <= top; ++k) {
      double a = std::abs(mt.at(double(k)));
      sum += 2.0 * std::pow(double(k), r - 1.0) * a * a;
    }
    return sum;
  }
  if (d == 2) {
    std::int64_t top = std::int64_t(lambda);
    if (top > 512) throw std::invalid_argument("2-d energy cutoff budget is 512");
    double sum = 0.0;
    std::vector<double> xi(2);
    for (std::int64_t i = -top; i <= top; ++i)
      for (std::int64_t j = -top; j <= top; ++j) {
        if (i == 0 && j == 0) continue;
        double rad = std::sqrt(double(i * i + j * j));
        if (rad > lambda) continue;
        xi[0] = double(i);
        xi[1] = double(j);
        double a = std::abs(mt(xi));
        sum += std::pow(rad, r - 2.0) * a * a;
      }
    return sum;
  }
  throw std::invalid_argument("energy sums support d <= 2");
}

EnergyGrowth energy_growth(const MeasureTransform& mt, double r, int d,
                           std::span<const double> lambdas) {
  if (lambdas.size() < 2) throw std::invalid_argument("need at least two cutoffs");
  if (!std::is_sorted(lambdas.begin(), lambdas.end()))
    throw std::invalid_argument("cutoffs must be ascending");
  EnergyGrowth eg;
  if (d == 1) {
    // one cumulative pass up to the largest cutoff
    std::int64_t top = std::int64_t(lambdas.back());
    std::size_t next = 0;
    double sum = 0.0;
    for (std::int64_t k = 1; k <= top; ++k) {
      while (next < lambdas.size() && lambdas[next] < double(k)) {
        eg.partials.emplace_back(lambdas[next], sum);
        ++next;
      }
      double a = std::abs(mt.at(double(k)));
      sum += 2.0 * std::pow(double(k), r - 1.0) * a * a;
    }
    while (next < lambdas.size()) eg.partials.emplace_back(lambdas[next++], sum);
  } else {
    for (double lam : lambdas) eg.partials.emplace_back(lam, energy_partial_sum(mt, r, d, lam));
  }
  std::vector<std::pair<double, double>> xy;
  for (auto& [lam, s] : eg.partials)
    if (s > 1e-300) xy.emplace_back(lam, s);
  if (xy.size() >= 2) {
    auto pf = core::fit_power_law(xy);
    eg.exponent = pf.exponent;
    eg.r2 = pf.r2;
  }
  return eg;
}

}  // namespace sumdim::fourier
