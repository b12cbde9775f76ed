#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "sumdim/cellset.hpp"
#include "sumdim/digit_cantor.hpp"

namespace sumdim::box {

struct Generator;

// 1-d digit set in [0,1): exact rasterization (cells = length-L digit strings).
struct DigitCantorGen {
  core::DigitCantorSpec spec;
};

// C_a: fixed points of {t -> a t, t -> a t + (1-a)}, a in (0, 1/2).
struct RatioCantorGen {
  double a = 1.0 / 3.0;
};

// Cartesian product of two lower-dimensional generators.
struct ProductGen {
  std::shared_ptr<const Generator> g1, g2;
};

// Graph {(t, f(t)) : t in [t0, t1]}; f named from a fixed catalogue so the
// monotone column scan stays exact: "parabola" t^2, "linear" t, "const" 0.
struct GraphCurveGen {
  std::string f = "parabola";
  double t0 = 0.0, t1 = 1.0;
};

// Sampled planar curve; conservative cover (may add one extra cell layer).
// Names: "parabola" (t, t^2), "segment" (t, 0).
struct ParametricCurveGen {
  std::string name = "parabola";
  double t0 = 0.0, t1 = 1.0;
};

// [0,1] x {0}  union  {1} x [0,1]: a horizontal then a vertical unit segment.
struct PolygonK0Gen {};

struct DiskGen {
  double cx = 0.5, cy = 0.5;
  double radius = 0.1;
};

// Axis box [corner_i, corner_i + side] in dimension corner.size().
struct BoxGen {
  std::vector<double> corner;
  double side = 1.0;
};

using GeneratorVariant = std::variant<DigitCantorGen, RatioCantorGen, ProductGen, GraphCurveGen,
                                      ParametricCurveGen, PolygonK0Gen, DiskGen, BoxGen>;

struct Generator {
  GeneratorVariant v;
};

int ambient_dim(const Generator& g);
std::string describe(const Generator& g);

// Cell cover of the generated set on the (b, L) grid.  Covers the true set
// and over-covers by at most one cell layer per coordinate; digit Cantor
// covers are exact.  Budget: b^L <= 2^13 cells per axis.
core::CellSet rasterize(const Generator& g, int b, int L);

Generator make_product(Generator g1, Generator g2);

}  // namespace sumdim::box
