#include "sumdim/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "sumdim/group.hpp"

namespace sumdim::box {

namespace {

constexpr std::int64_t kAxisBudget = std::int64_t(1) << 13;

std::int64_t checked_side(int b, int L) {
  if (b < 2) throw std::invalid_argument("base must be >= 2");
  if (L < 0) throw std::invalid_argument("level must be >= 0");
  std::int64_t n = 1;
  for (int i = 0; i < L; ++i) {
    n *= b;
    if (n > kAxisBudget) throw std::invalid_argument("b^L exceeds the 2^13 per-axis cell budget");
  }
  return n;
}

// cell range covering [lo, hi] (closed: boundary points kept, outward cover)
std::pair<std::int64_t, std::int64_t> cell_range(double lo, double hi, std::int64_t n) {
  std::int64_t a = std::int64_t(std::floor(lo * double(n)));
  std::int64_t b = std::int64_t(std::floor(hi * double(n)));
  return {a, b};
}

core::CellSet raster_digit_cantor(const DigitCantorGen& g, int b, int L) {
  if (b != g.spec.base)
    throw std::invalid_argument("digit Cantor rasterization requires the grid base to equal " +
                                std::to_string(g.spec.base));
  checked_side(b, L);
  std::vector<std::int64_t> cells;
  if (L == 0) {
    cells.push_back(0);
  } else {
    for (std::uint32_t v : group::level_digit_set(g.spec, L)) cells.push_back(std::int64_t(v));
  }
  return core::CellSet::from_cells(1, b, L, std::move(cells));
}

core::CellSet raster_ratio_cantor(const RatioCantorGen& g, int b, int L) {
  if (!(g.a > 0.0 && g.a < 0.5))
    throw std::invalid_argument("Cantor ratio must lie in (0, 1/2)");
  std::int64_t n = checked_side(b, L);
  // iterate the interval IFS until pieces are below one cell (max 20 rounds)
  int depth = 0;
  double len = 1.0;
  while (len * double(n) > 1.0 && depth < 20) {
    len *= g.a;
    ++depth;
  }
  std::vector<double> lows{0.0};
  for (int i = 0; i < depth; ++i) {
    std::vector<double> next;
    next.reserve(lows.size() * 2);
    for (double lo : lows) {
      next.push_back(lo * g.a);
      next.push_back(lo * g.a + (1.0 - g.a));
    }
    lows = std::move(next);
  }
  std::vector<std::int64_t> cells;
  for (double lo : lows) {
    auto [c0, c1] = cell_range(lo, lo + len, n);
    for (std::int64_t c = c0; c <= c1; ++c) cells.push_back(c);
  }
  return core::CellSet::from_cells(1, b, L, std::move(cells));
}

struct GraphFn {
  // monotone breakpoints and evaluation for the named graph function
  double (*eval)(double);
  double breakpoint;   // NaN when monotone everywhere
};

GraphFn graph_fn(const std::string& name) {
  if (name == "parabola") return {[](double t) { return t * t; }, 0.0};
  if (name == "linear") return {[](double t) { return t; }, std::nan("")};
  if (name == "const") return {[](double) { return 0.0; }, std::nan("")};
  throw std::invalid_argument("unknown graph function: " + name);
}

core::CellSet raster_graph(const GraphCurveGen& g, int b, int L) {
  if (!(g.t0 < g.t1)) throw std::invalid_argument("graph domain must satisfy t0 < t1");
  std::int64_t n = checked_side(b, L);
  GraphFn fn = graph_fn(g.f);
  std::vector<std::int64_t> cells;
  auto [c0, c1] = cell_range(g.t0, g.t1, n);
  for (std::int64_t c = c0; c <= c1; ++c) {
    double xl = std::max(g.t0, double(c) / double(n));
    double xr = std::min(g.t1, double(c + 1) / double(n));
    // candidate extrema: endpoints plus any monotonicity breakpoint inside
    double f0 = fn.eval(xl), f1 = fn.eval(xr);
    double fmin = std::min(f0, f1), fmax = std::max(f0, f1);
    if (!std::isnan(fn.breakpoint) && fn.breakpoint > xl && fn.breakpoint < xr) {
      double fb = fn.eval(fn.breakpoint);
      fmin = std::min(fmin, fb);
      fmax = std::max(fmax, fb);
    }
    auto [r0, r1] = cell_range(fmin, fmax, n);
    for (std::int64_t r = r0; r <= r1; ++r) {
      cells.push_back(c);
      cells.push_back(r);
    }
  }
  return core::CellSet::from_cells(2, b, L, std::move(cells));
}

void curve_point(const std::string& name, double t, double& x, double& y) {
  if (name == "parabola") {
    x = t;
    y = t * t;
  } else if (name == "segment") {
    x = t;
    y = 0.0;
  } else {
    throw std::invalid_argument("unknown parametric curve: " + name);
  }
}

core::CellSet raster_parametric(const ParametricCurveGen& g, int b, int L) {
  if (!(g.t0 < g.t1)) throw std::invalid_argument("curve domain must satisfy t0 < t1");
  std::int64_t n = checked_side(b, L);
  double lip = g.name == "parabola" ? std::sqrt(5.0) : 1.0;
  double step = 1.0 / (4.0 * double(n) * lip);
  std::size_t nsteps = std::size_t((g.t1 - g.t0) / step) + 2;
  std::vector<std::int64_t> cells;
  for (std::size_t i = 0; i < nsteps; ++i) {
    double t = std::min(g.t1, g.t0 + double(i) * step);
    double x, y;
    curve_point(g.name, t, x, y);
    cells.push_back(std::int64_t(std::floor(x * double(n))));
    cells.push_back(std::int64_t(std::floor(y * double(n))));
  }
  return core::CellSet::from_cells(2, b, L, std::move(cells));
}

core::CellSet raster_k0(int b, int L) {
  std::int64_t n = checked_side(b, L);
  std::vector<std::int64_t> cells;
  for (std::int64_t c = 0; c <= n; ++c) {
    cells.push_back(c);  // horizontal run [0,1] x {0}
    cells.push_back(0);
    cells.push_back(n);  // vertical run {1} x [0,1]
    cells.push_back(c);
  }
  return core::CellSet::from_cells(2, b, L, std::move(cells));
}

core::CellSet raster_disk(const DiskGen& g, int b, int L) {
  if (!(g.radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
  std::int64_t n = checked_side(b, L);
  std::vector<std::int64_t> cells;
  auto [c0, c1] = cell_range(g.cx - g.radius, g.cx + g.radius, n);
  for (std::int64_t c = c0; c <= c1; ++c) {
    double xl = double(c) / double(n), xr = double(c + 1) / double(n);
    double dx = 0.0;  // distance from cx to the column strip
    if (g.cx < xl) dx = xl - g.cx;
    if (g.cx > xr) dx = g.cx - xr;
    double h2 = g.radius * g.radius - dx * dx;
    if (h2 < 0.0) continue;
    double h = std::sqrt(h2);
    auto [r0, r1] = cell_range(g.cy - h, g.cy + h, n);
    for (std::int64_t r = r0; r <= r1; ++r) {
      cells.push_back(c);
      cells.push_back(r);
    }
  }
  return core::CellSet::from_cells(2, b, L, std::move(cells));
}

core::CellSet raster_box(const BoxGen& g, int b, int L) {
  int d = int(g.corner.size());
  if (d < 1 || d > core::kMaxDim) throw std::invalid_argument("box dimension must be in [1,6]");
  if (!(g.side > 0.0)) throw std::invalid_argument("box side must be positive");
  std::int64_t n = checked_side(b, L);
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  for (double c : g.corner) ranges.push_back(cell_range(c, c + g.side, n));
  std::vector<std::int64_t> cells;
  std::vector<std::int64_t> cur(std::size_t(d), 0);
  for (int i = 0; i < d; ++i) cur[std::size_t(i)] = ranges[std::size_t(i)].first;
  for (;;) {
    cells.insert(cells.end(), cur.begin(), cur.end());
    int axis = d - 1;
    while (axis >= 0 && cur[std::size_t(axis)] == ranges[std::size_t(axis)].second) {
      cur[std::size_t(axis)] = ranges[std::size_t(axis)].first;
      --axis;
    }
    if (axis < 0) break;
    ++cur[std::size_t(axis)];
  }
  return core::CellSet::from_cells(d, b, L, std::move(cells));
}

core::CellSet raster_product(const ProductGen& g, int b, int L) {
  core::CellSet a = rasterize(*g.g1, b, L);
  core::CellSet c = rasterize(*g.g2, b, L);
  int d = a.dim() + c.dim();
  if (d > core::kMaxDim) throw std::invalid_argument("product dimension exceeds 6");
  std::vector<std::int64_t> cells;
  cells.reserve(a.count() * c.count() * std::size_t(d));
  for (std::size_t i = 0; i < a.count(); ++i) {
    auto ca = a.cell(i);
    for (std::size_t j = 0; j < c.count(); ++j) {
      auto cc = c.cell(j);
      cells.insert(cells.end(), ca.begin(), ca.end());
      cells.insert(cells.end(), cc.begin(), cc.end());
    }
  }
  return core::CellSet::from_cells(d, b, L, std::move(cells));
}

}  // namespace

int ambient_dim(const Generator& g) {
  return std::visit(
      [](const auto& gen) -> int {
        using T = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<T, DigitCantorGen> || std::is_same_v<T, RatioCantorGen>)
          return 1;
        else if constexpr (std::is_same_v<T, ProductGen>)
          return ambient_dim(*gen.g1) + ambient_dim(*gen.g2);
        else if constexpr (std::is_same_v<T, BoxGen>)
          return int(gen.corner.size());
        else
          return 2;
      },
      g.v);
}

std::string describe(const Generator& g) {
  return std::visit(
      [](const auto& gen) -> std::string {
        using T = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<T, DigitCantorGen>)
          return gen.spec.describe();
        else if constexpr (std::is_same_v<T, RatioCantorGen>)
          return "ratio_cantor(" + std::to_string(gen.a) + ")";
        else if constexpr (std::is_same_v<T, ProductGen>)
          return describe(*gen.g1) + " x " + describe(*gen.g2);
        else if constexpr (std::is_same_v<T, GraphCurveGen>)
          return "graph(" + gen.f + ", [" + std::to_string(gen.t0) + "," + std::to_string(gen.t1) +
                 "])";
        else if constexpr (std::is_same_v<T, ParametricCurveGen>)
          return "curve(" + gen.name + ")";
        else if constexpr (std::is_same_v<T, PolygonK0Gen>)
          return "k0_corner";
        else if constexpr (std::is_same_v<T, DiskGen>)
          return "disk(" + std::to_string(gen.radius) + ")";
        else
          return "box(d=" + std::to_string(gen.corner.size()) + ")";
      },
      g.v);
}

core::CellSet rasterize(const Generator& g, int b, int L) {
  return std::visit(
      [&](const auto& gen) -> core::CellSet {
        using T = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<T, DigitCantorGen>)
          return raster_digit_cantor(gen, b, L);
        else if constexpr (std::is_same_v<T, RatioCantorGen>)
          return raster_ratio_cantor(gen, b, L);
        else if constexpr (std::is_same_v<T, ProductGen>)
          return raster_product(gen, b, L);
        else if constexpr (std::is_same_v<T, GraphCurveGen>)
          return raster_graph(gen, b, L);
        else if constexpr (std::is_same_v<T, ParametricCurveGen>)
          return raster_parametric(gen, b, L);
        else if constexpr (std::is_same_v<T, PolygonK0Gen>)
          return raster_k0(b, L);
        else if constexpr (std::is_same_v<T, DiskGen>)
          return raster_disk(gen, b, L);
        else
          return raster_box(gen, b, L);
      },
      g.v);
}

Generator make_product(Generator g1, Generator g2) {
  ProductGen p;
  p.g1 = std::make_shared<Generator>(std::move(g1));
  p.g2 = std::make_shared<Generator>(std::move(g2));
  return Generator{p};
}

}  // namespace sumdim::box
