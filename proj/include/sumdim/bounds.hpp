#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sumdim::bounds {

// Exact rational arithmetic for the convolution-exponent identities.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n);  // NOLINT: implicit integer promotion is the point
  Rat(long long n, long long d);
  double value() const { return double(num) / double(den); }
  bool operator==(const Rat&) const = default;
};

Rat operator+(Rat a, Rat b);
Rat operator-(Rat a, Rat b);
Rat operator*(Rat a, Rat b);
Rat operator/(Rat a, Rat b);

double trivial_bound(double alpha, double beta);
double minkowski_curve_bound(double beta);                      // 1 + beta/2, d = 2
double minkowski_general_bound(double alpha, double beta, double d);  // a + b - ab/d
double growth_to_dimension(double gamma, double beta, double d);      // d(1-g) + g b
double salem_bound(double alpha, double beta, double d);              // min(a+b, d)
double fourier_decay_bound(double s, double beta, double d);          // min(b+s, d)

// q' (d/p - d/q + beta/p') with conjugate exponents; raw, uncapped.
double convolution_bound(double p, double q, double d, double beta);
Rat convolution_bound_exact(Rat p, Rat q, Rat d, Rat beta);

// (1/p, 1/q) inside the closed exponent triangle with vertices (0,0), (1,1)
// and (d/(2d-a), (d-a)/(2d-a)).
bool triangle_membership(double p, double q, double alpha, double d);
// barycentric coefficients (s, t) of (1/p, 1/q) on the (1,1)/vertex edge basis
std::pair<double, double> triangle_coefficients(double p, double q, double alpha, double d);

double mass_growth_exponent(double p, double q);  // q'/p'

struct FiniteTypeR3 {
  std::optional<double> value;  // min(beta+1, 3) when 0 < beta <= 2
  bool hypothesis_ok = false;
  std::string note;
};
FiniteTypeR3 finite_type_r3_bound(double beta);

struct MomentCurveBounds {
  double fourier_decay = 0.0;           // min(beta + 2/d, d)
  double christ = 0.0;                  // min((1 - 1/d) beta + 1, d)
  std::optional<double> projection;     // beta + 1 when beta <= 2
};
MomentCurveBounds moment_curve_bounds(int d, double beta);

// Scenario kinds: generic, digit_cantor, nondegenerate_curve_2d,
// nondegenerate_k_surface, salem, fourier_decay, finite_type_curve_r3,
// moment_curve, convolution.
struct Scenario {
  int d = 1;
  std::string kind = "generic";
  double alpha = 0.0;  // dimension of K (flavor depends on the bound)
  double beta = 0.0;   // dimension of E
  int n = 0;           // digit_cantor parameters
  std::vector<int> digits;
  int k = 0;               // surface dimension
  double decay_s = 0.0;    // Fourier decay exponent of |mu_hat|^2
  double p = 0.0, q = 0.0; // convolution exponents
  std::optional<double> gamma;  // certified cyclic growth exponent
};

struct BoundEntry {
  std::string name;
  std::string flavor;  // "minkowski" or "hausdorff"
  double raw = 0.0;
  double effective = 0.0;  // min(d, max(raw, trivial))
  std::string citation;
};

struct BoundReport {
  Scenario scenario;
  std::vector<BoundEntry> entries;
  double best_minkowski = 0.0;
  double best_hausdorff = 0.0;
};

BoundReport tabulate(const Scenario& sc);

}  // namespace sumdim::bounds
