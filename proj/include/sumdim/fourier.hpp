#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sumdim/digit_cantor.hpp"
#include "sumdim/powerfit.hpp"

namespace sumdim::fourier {

using cplx = std::complex<double>;

// Named parametric curve on [t0, t1]; "parabola" (t, t^2) in R^2,
// "segment" (t, 0) in R^2, "moment" (t, t^2, ..., t^d) in R^d.
struct Curve {
  int d = 2;
  std::string name = "parabola";
  double t0 = 0.0, t1 = 1.0;
};

Curve parabola_curve();
Curve segment_curve();
Curve moment_curve(int d);

void curve_point(const Curve& c, double t, std::span<double> out);
double curve_lipschitz(const Curve& c);  // sup |gamma'| on the domain

// Truncation level making the tail bound 2 pi max(S) |xi| n^-J / (n-1)
// drop below tol (at least 1).
int auto_truncation(const core::DigitCantorSpec& spec, double xi, double tol = 1e-10);

// prod_{j=1..J} (1/|S|) sum_s exp(-2 pi i s n^-j xi).
cplx cantor_transform(const core::DigitCantorSpec& spec, double xi, int J);

// Midpoint quadrature of exp(-2 pi i <xi, gamma(t)>) with M nodes; the measure
// is dt (parameter) or normalized arclength.  Valid for |xi| <= M / 10.
cplx curve_transform(const Curve& c, std::span<const double> xi, int M, bool arclength);

// Evaluator bundle: probability-measure transforms with mu_hat(0) = 1,
// Hermitian symmetry and |mu_hat| <= 1.
struct MeasureTransform {
  enum class Kind { Cantor, Curve, PointMass, UniformInterval };
  Kind kind = Kind::PointMass;
  int d = 1;
  core::DigitCantorSpec spec;
  Curve curve;
  bool arclength = false;

  cplx operator()(std::span<const double> xi) const;
  cplx at(double xi) const;  // 1-d convenience
  std::string describe() const;
};

MeasureTransform cantor_measure(const core::DigitCantorSpec& spec);
MeasureTransform curve_measure(Curve c, bool arclength);
MeasureTransform point_mass_measure(int d);
MeasureTransform uniform_interval_measure();

struct DecayFitOptions {
  int m0 = 4, m1 = 12;      // octaves [2^m, 2^(m+1)] for m in [m0, m1]
  int radii = 64;           // log-uniform radii per octave
  int directions = 32;      // sampled unit directions (d >= 2)
  std::vector<std::vector<double>> explicit_directions;
  std::vector<double> explicit_radii;  // overrides octave sampling when set
  std::uint64_t seed = 0;
};

struct DecayFit {
  struct OctaveSup {
    double radius = 0.0;  // representative |xi| for the fit
    double sup = 0.0;
  };
  std::vector<OctaveSup> sups;
  double exponent = 0.0;  // |mu_hat| ~ |xi|^-exponent
  double r2 = 0.0;
};

DecayFit decay_fit(const MeasureTransform& mt, const DecayFitOptions& opt);

// sum over nonzero integer frequencies with |xi| <= lambda of |xi|^(r-d) |mu_hat|^2.
double energy_partial_sum(const MeasureTransform& mt, double r, int d, double lambda);

struct EnergyGrowth {
  std::vector<std::pair<double, double>> partials;  // (lambda, partial sum)
  double exponent = 0.0;                            // growth in lambda (0 when flat)
  double r2 = 0.0;
};

EnergyGrowth energy_growth(const MeasureTransform& mt, double r, int d,
                           std::span<const double> lambdas);

}  // namespace sumdim::fourier
