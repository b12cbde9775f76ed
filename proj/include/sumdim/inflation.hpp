#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sumdim/powerfit.hpp"

namespace sumdim::infl {

// Signed-sum map K^d -> (R^d)^k assembled from two pieces per output row:
// row j of Tp carries the q-term block on x_{(j-1)q+1..jq} (lowest index
// negated, the rest +1) and row j of Tpp carries the tail x_{d-n_j..d}
// (all +1; empty when d = qk exactly).
struct InflationMapSpec {
  int d = 0, k = 0, q = 0, r = 0;
  std::vector<int> n;                       // n_1..n_k, empty when r == 0
  std::vector<std::vector<int>> T, Tp, Tpp; // k rows x d cols, entries -1/0/1
};

InflationMapSpec build_inflation(int d, int k);

// Canonical rendering, e.g. "(x5 + x2 - x1, x5 + x4 - x3)".
std::string format_map(const InflationMapSpec& spec);

// Uniform probability measure on an axis-aligned k-slab of K_0: the listed
// coordinates range over [-1/2, 1/2], all others are 0.
struct SlabMeasure {
  int d = 0;
  std::vector<int> coords;  // 1-based, size k
};

struct TransportPlan {
  InflationMapSpec spec;
  std::vector<SlabMeasure> slabs;        // one per x_1..x_d
  std::vector<std::vector<int>> M;       // dk x dk: slab parameters -> output coords
  double abs_det = 0.0;
  bool det_ok = false;                   // | |det M| - 1 | <= 1e-9
  std::vector<std::vector<int>> second_block;  // kr x kr in the b-variable order
  bool block_unit_lower = false;         // exactly unit lower triangular
  std::vector<int> param_class;          // size dk, 1 = first class, 2 = second class
};

TransportPlan build_transport(const InflationMapSpec& spec);

struct PushforwardBox {
  std::vector<double> lo, hi;  // dk-dimensional axis box
};

std::vector<PushforwardBox> random_image_boxes(const TransportPlan& plan, int count,
                                               std::uint64_t seed);

// Monte Carlo estimate of P(Psi(X) in B) with X ~ prod of slab measures,
// compared against vol(B): pass iff estimate <= vol + 3 * binomial SE.
struct PushforwardReport {
  struct Entry {
    PushforwardBox box;
    double vol = 0.0, estimate = 0.0, se = 0.0;
    bool pass = false;
  };
  std::vector<Entry> entries;
  std::uint64_t samples = 0, seed = 0;
  bool pass = false;
};

PushforwardReport mc_pushforward_check(const TransportPlan& plan,
                                       std::span<const PushforwardBox> boxes,
                                       std::uint64_t samples, std::uint64_t seed);

// Occupied-volume lower bound for the image measure of Psi over i.i.d. surface
// samples, binned on a grid of cell width 2^-grid_level.  Surfaces:
// "parabola" (t, t^2), "segment" (t, 0), "k0_corner" ([0,1]x{0} u {1}x[0,1]),
// "k0_centered" (random centered axis slab, k = 1 only).
double nondegeneracy_estimate(const std::string& surface, const InflationMapSpec& spec,
                              int grid_level, std::uint64_t samples, std::uint64_t seed);

// Monte Carlo value of  integral over y of  prod_j lambda_j(E - y)  for the
// axis box E = [lo, hi], sampling y uniformly over the exact support box.
double lemma1_box_integral(const TransportPlan& plan, std::span<const double> lo,
                           std::span<const double> hi, std::uint64_t samples, std::uint64_t seed);

// Growth-exponent probe over origin-centered cubes with sides 2^0 .. 2^-imax:
// fits lhs against m_d(E) and compares the exponent with d/(d-k) - 0.1.
struct Lemma1Probe {
  struct Point {
    double side = 0.0, measure = 0.0, lhs = 0.0;
  };
  std::vector<Point> points;
  double exponent = 0.0, r2 = 0.0, target = 0.0;
  bool pass = false;
};

Lemma1Probe lemma1_exponent_probe(const TransportPlan& plan, int imax, std::uint64_t samples,
                                  std::uint64_t seed);

// Whether the plain head-sum map x_1+...+x_l - x_j can be nondegenerate:
// true iff (d-k)k <= d or k == 1 or k == d-1 or d <= 4.
bool psi0_degeneracy_check(int d, int k);

}  // namespace sumdim::infl
