#include "sumdim/inflation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unordered_set>

#include "sumdim/parallel.hpp"
#include "sumdim/rng.hpp"

namespace sumdim::infl {

namespace {

// 1-based residue in [1, d]
int wrap(int i, int d) { return (i - 1) % d + 1; }

double abs_det_lu(std::vector<std::vector<double>> a) {
  std::size_t n = a.size();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t rr = c + 1; rr < n; ++rr)
      if (std::fabs(a[rr][c]) > std::fabs(a[piv][c])) piv = rr;
    if (std::fabs(a[piv][c]) < 1e-13) return 0.0;
    if (piv != c) std::swap(a[piv], a[c]);
    det *= a[c][c];
    for (std::size_t rr = c + 1; rr < n; ++rr) {
      double f = a[rr][c] / a[c][c];
      if (f == 0.0) continue;
      for (std::size_t cc = c; cc < n; ++cc) a[rr][cc] -= f * a[c][cc];
    }
  }
  return std::fabs(det);
}

struct SurfaceSampler {
  int d = 0;
  std::string name;

  void sample(rng::Rng& rng, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    if (name == "parabola") {
      double t = rng.uniform01();
      out[0] = t;
      out[1] = t * t;
    } else if (name == "segment") {
      out[0] = rng.uniform01();
    } else if (name == "k0_corner") {
      double t = rng.uniform01();
      if (rng.uniform01() < 0.5) {
        out[0] = t;  // [0,1] x {0}
      } else {
        out[0] = 1.0;  // {1} x [0,1]
        out[1] = t;
      }
    } else if (name == "k0_centered") {
      std::size_t axis = std::size_t(rng.below(std::uint64_t(d)));
      out[axis] = rng.uniform(-0.5, 0.5);
    } else {
      throw std::invalid_argument("unknown surface sampler: " + name);
    }
  }
};

SurfaceSampler make_sampler(const std::string& surface, int d) {
  if (surface == "k0_centered") return {d, surface};
  if (d != 2) throw std::invalid_argument("surface '" + surface + "' is planar (d = 2)");
  if (surface != "parabola" && surface != "segment" && surface != "k0_corner")
    throw std::invalid_argument("unknown surface sampler: " + surface);
  return {d, surface};
}

}  // namespace

InflationMapSpec build_inflation(int d, int k) {
  if (!(1 <= k && k < d && d <= 8))
    throw std::invalid_argument("inflation map requires 1 <= k < d <= 8");
  InflationMapSpec s;
  s.d = d;
  s.k = k;
  s.q = d / k;
  s.r = d % k;
  if (s.r > 0) {
    for (int j = 1; j <= k; ++j) {
      int nj = (j * s.r + k - 1) / k - 1;  // smallest n with j r <= (n+1) k
      if (!(nj * k < j * s.r && j * s.r <= (nj + 1) * k) || nj < 0 || nj >= s.r)
        throw std::logic_error("tail index out of range");
      s.n.push_back(nj);
    }
  }
  s.T.assign(std::size_t(k), std::vector<int>(std::size_t(d), 0));
  s.Tp = s.T;
  s.Tpp = s.T;
  for (int j = 1; j <= k; ++j) {
    auto& tp = s.Tp[std::size_t(j - 1)];
    for (int t = 0; t <= s.q - 2; ++t) tp[std::size_t(j * s.q - t - 1)] = 1;
    tp[std::size_t(j * s.q - (s.q - 1) - 1)] = -1;
    if (s.r > 0) {
      auto& tpp = s.Tpp[std::size_t(j - 1)];
      for (int t = 0; t <= s.n[std::size_t(j - 1)]; ++t) tpp[std::size_t(d - t - 1)] = 1;
    }
    for (int i = 0; i < d; ++i) {
      if (s.Tp[std::size_t(j - 1)][std::size_t(i)] != 0 &&
          s.Tpp[std::size_t(j - 1)][std::size_t(i)] != 0)
        throw std::logic_error("overlapping supports in the two pieces");
      s.T[std::size_t(j - 1)][std::size_t(i)] =
          s.Tp[std::size_t(j - 1)][std::size_t(i)] + s.Tpp[std::size_t(j - 1)][std::size_t(i)];
    }
  }
  return s;
}

std::string format_map(const InflationMapSpec& spec) {
  std::string out = "(";
  for (int j = 1; j <= spec.k; ++j) {
    if (j > 1) out += ", ";
    bool first = true;
    auto emit = [&](int idx, int sign) {
      if (first) {
        if (sign < 0) out += "-";
        first = false;
      } else {
        out += sign < 0 ? " - " : " + ";
      }
      out += "x" + std::to_string(idx);
    };
    if (spec.r > 0)
      for (int t = 0; t <= spec.n[std::size_t(j - 1)]; ++t) emit(spec.d - t, 1);
    for (int t = 0; t <= spec.q - 2; ++t) emit(j * spec.q - t, 1);
    emit(j * spec.q - (spec.q - 1), -1);
    (void)first;
  }
  return out + ")";
}

TransportPlan build_transport(const InflationMapSpec& spec) {
  int d = spec.d, k = spec.k, q = spec.q, r = spec.r;
  TransportPlan plan;
  plan.spec = spec;
  plan.slabs.assign(std::size_t(d), SlabMeasure{});

  // First class: for block j, the complement of its second-class coordinates,
  // ascending, split into q consecutive runs of k for slabs (j-1)q+1 .. jq.
  for (int j = 1; j <= k; ++j) {
    std::vector<bool> second(std::size_t(d + 1), false);
    for (int t = 1; t <= r; ++t) second[std::size_t(wrap((j - 1) * r + t, d))] = true;
    std::vector<int> P;
    for (int i = 1; i <= d; ++i)
      if (!second[std::size_t(i)]) P.push_back(i);
    if (int(P.size()) != k * q) throw std::logic_error("first-class coordinate count mismatch");
    for (int i = 1; i <= q; ++i) {
      SlabMeasure& slab = plan.slabs[std::size_t((j - 1) * q + i - 1)];
      slab.d = d;
      slab.coords.assign(P.begin() + (i - 1) * k, P.begin() + i * k);
    }
  }
  // Second class: slab x_{d-j+1} carries coordinates [(j-1)k+1 .. jk] mod d.
  for (int j = 1; j <= r; ++j) {
    SlabMeasure& slab = plan.slabs[std::size_t(d - j)];
    slab.d = d;
    std::unordered_set<int> seen;
    for (int nn = 1; nn <= k; ++nn) {
      int c = wrap((j - 1) * k + nn, d);
      if (!seen.insert(c).second)
        throw std::logic_error("slab coordinates must be distinct");
      slab.coords.push_back(c);
    }
  }

  int dk = d * k;
  plan.M.assign(std::size_t(dk), std::vector<int>(std::size_t(dk), 0));
  for (int j = 1; j <= k; ++j)
    for (int s = 1; s <= d; ++s) {
      int coef = spec.T[std::size_t(j - 1)][std::size_t(s - 1)];
      if (coef == 0) continue;
      const SlabMeasure& slab = plan.slabs[std::size_t(s - 1)];
      for (int p = 1; p <= k; ++p) {
        int i = slab.coords[std::size_t(p - 1)];
        plan.M[std::size_t((j - 1) * d + i - 1)][std::size_t((s - 1) * k + p - 1)] = coef;
      }
    }

  plan.param_class.assign(std::size_t(dk), 1);
  for (int s = d - r + 1; s <= d; ++s)
    for (int p = 1; p <= k; ++p) plan.param_class[std::size_t((s - 1) * k + p - 1)] = 2;

  std::vector<std::vector<double>> Md(std::size_t(dk), std::vector<double>(std::size_t(dk), 0.0));
  for (int a = 0; a < dk; ++a)
    for (int b = 0; b < dk; ++b) Md[std::size_t(a)][std::size_t(b)] = plan.M[std::size_t(a)][std::size_t(b)];
  plan.abs_det = abs_det_lu(std::move(Md));
  plan.det_ok = std::fabs(plan.abs_det - 1.0) <= 1e-9;

  // kr x kr block of the tail map in the b-variable order: flat index s maps
  // the output slot (block ceil(s/r), coord [s]) and the parameter
  // (slab d - ceil(s/k) + 1, position s - (ceil(s/k)-1) k).
  int kr = k * r;
  plan.second_block.assign(std::size_t(kr), std::vector<int>(std::size_t(kr), 0));
  for (int srow = 1; srow <= kr; ++srow) {
    int jout = (srow + r - 1) / r;
    int iout = wrap(srow, d);
    int row = (jout - 1) * d + iout - 1;
    for (int scol = 1; scol <= kr; ++scol) {
      int jj = (scol + k - 1) / k;
      int p = scol - (jj - 1) * k;
      int col = (d - jj + 1 - 1) * k + p - 1;
      plan.second_block[std::size_t(srow - 1)][std::size_t(scol - 1)] =
          plan.M[std::size_t(row)][std::size_t(col)];
    }
  }
  plan.block_unit_lower = true;
  for (int a = 0; a < kr; ++a)
    for (int b = 0; b < kr; ++b) {
      int v = plan.second_block[std::size_t(a)][std::size_t(b)];
      if (a == b ? v != 1 : (b > a && v != 0)) plan.block_unit_lower = false;
    }
  return plan;
}

std::vector<PushforwardBox> random_image_boxes(const TransportPlan& plan, int count,
                                               std::uint64_t seed) {
  int dk = plan.spec.d * plan.spec.k;
  std::vector<double> radius(std::size_t(dk), 0.0);
  for (int a = 0; a < dk; ++a) {
    double s = 0.0;
    for (int b = 0; b < dk; ++b) s += std::abs(plan.M[std::size_t(a)][std::size_t(b)]);
    radius[std::size_t(a)] = 0.5 * s;
  }
  rng::Rng rng(seed, 101);
  std::vector<PushforwardBox> boxes;
  for (int i = 0; i < count; ++i) {
    PushforwardBox box;
    box.lo.resize(std::size_t(dk));
    box.hi.resize(std::size_t(dk));
    for (int a = 0; a < dk; ++a) {
      double c = rng.uniform(-radius[std::size_t(a)], radius[std::size_t(a)]);
      double side = rng.log_uniform(0.05, 0.5);
      box.lo[std::size_t(a)] = c;
      box.hi[std::size_t(a)] = c + side;
    }
    boxes.push_back(std::move(box));
  }
  return boxes;
}

PushforwardReport mc_pushforward_check(const TransportPlan& plan,
                                       std::span<const PushforwardBox> boxes,
                                       std::uint64_t samples, std::uint64_t seed) {
  if (samples < 10000) throw std::invalid_argument("pushforward check needs >= 10^4 samples");
  int dk = plan.spec.d * plan.spec.k;
  for (const auto& b : boxes)
    if (int(b.lo.size()) != dk || int(b.hi.size()) != dk)
      throw std::invalid_argument("box dimension mismatch");

  int nchunks = 64;
  std::vector<std::vector<std::uint64_t>> hits(std::size_t(nchunks),
                                               std::vector<std::uint64_t>(boxes.size(), 0));
  util::parallel_chunks(nchunks, [&](int c) {
    rng::Rng rng(seed, std::uint64_t(c) + 1);
    std::uint64_t begin = samples * std::uint64_t(c) / std::uint64_t(nchunks);
    std::uint64_t end = samples * std::uint64_t(c + 1) / std::uint64_t(nchunks);
    std::vector<double> u(std::size_t(dk), 0.0), y(std::size_t(dk), 0.0);
    for (std::uint64_t t = begin; t < end; ++t) {
      for (auto& v : u) v = rng.uniform(-0.5, 0.5);
      for (int a = 0; a < dk; ++a) {
        double acc = 0.0;
        const auto& row = plan.M[std::size_t(a)];
        for (int b = 0; b < dk; ++b) acc += row[std::size_t(b)] * u[std::size_t(b)];
        y[std::size_t(a)] = acc;
      }
      for (std::size_t bi = 0; bi < boxes.size(); ++bi) {
        bool in = true;
        for (int a = 0; a < dk && in; ++a)
          in = boxes[bi].lo[std::size_t(a)] <= y[std::size_t(a)] &&
               y[std::size_t(a)] <= boxes[bi].hi[std::size_t(a)];
        if (in) ++hits[std::size_t(c)][bi];
      }
    }
  });

  PushforwardReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.pass = true;
  for (std::size_t bi = 0; bi < boxes.size(); ++bi) {
    std::uint64_t h = 0;
    for (int c = 0; c < nchunks; ++c) h += hits[std::size_t(c)][bi];
    PushforwardReport::Entry e;
    e.box = boxes[bi];
    double vol = 1.0;
    for (int a = 0; a < dk; ++a)
      vol *= std::max(0.0, e.box.hi[std::size_t(a)] - e.box.lo[std::size_t(a)]);
    e.vol = vol;
    e.estimate = double(h) / double(samples);
    e.se = std::sqrt(std::min(vol, 1.0) * std::max(0.0, 1.0 - std::min(vol, 1.0)) /
                     double(samples));
    e.pass = e.estimate <= e.vol + 3.0 * e.se;
    rep.pass = rep.pass && e.pass;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

double nondegeneracy_estimate(const std::string& surface, const InflationMapSpec& spec,
                              int grid_level, std::uint64_t samples, std::uint64_t seed) {
  int d = spec.d, k = spec.k, dk = d * k;
  if (dk > 6) throw std::invalid_argument("occupancy grid supports d*k <= 6");
  if (grid_level < 1 || grid_level > 12)
    throw std::invalid_argument("grid level must be in [1, 12]");
  SurfaceSampler sampler = make_sampler(surface, d);

  // per-axis bound |y_a| <= sum_s |T| * (max coordinate magnitude = 1)
  double radius = 0.0;
  for (int j = 0; j < k; ++j) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += std::abs(spec.T[std::size_t(j)][std::size_t(i)]);
    radius = std::max(radius, s);
  }
  double offset = radius + 1.0;
  std::int64_t per_axis = std::int64_t(std::ceil(2.0 * offset)) << grid_level;

  using u128 = unsigned __int128;
  bool packable = true;
  u128 extent = 1;
  for (int a = 0; a < dk; ++a) {
    extent *= u128(per_axis);
    if (extent > (u128(1) << 62)) {
      packable = false;
      break;
    }
  }

  int nchunks = 64;
  std::vector<std::vector<std::uint64_t>> keys(static_cast<std::size_t>(nchunks));
  util::parallel_chunks(nchunks, [&](int c) {
    rng::Rng rng(seed, std::uint64_t(c) + 1);
    std::uint64_t begin = samples * std::uint64_t(c) / std::uint64_t(nchunks);
    std::uint64_t end = samples * std::uint64_t(c + 1) / std::uint64_t(nchunks);
    std::vector<std::vector<double>> x(std::size_t(d), std::vector<double>(std::size_t(d), 0.0));
    std::vector<double> y(std::size_t(dk), 0.0);
    std::vector<std::uint64_t>& out = keys[std::size_t(c)];
    out.reserve(std::size_t(end - begin));
    for (std::uint64_t t = begin; t < end; ++t) {
      for (int s = 0; s < d; ++s) sampler.sample(rng, x[std::size_t(s)]);
      for (int j = 0; j < k; ++j)
        for (int i = 0; i < d; ++i) {
          double acc = 0.0;
          for (int s = 0; s < d; ++s)
            acc += spec.T[std::size_t(j)][std::size_t(s)] * x[std::size_t(s)][std::size_t(i)];
          y[std::size_t(j * d + i)] = acc;
        }
      std::uint64_t key = 0;
      if (packable) {
        for (int a = 0; a < dk; ++a) {
          std::int64_t idx =
              std::int64_t(std::floor((y[std::size_t(a)] + offset) * double(std::int64_t(1) << grid_level)));
          idx = std::clamp<std::int64_t>(idx, 0, per_axis - 1);
          key = key * std::uint64_t(per_axis) + std::uint64_t(idx);
        }
      } else {
        key = 1469598103934665603ull;  // FNV-1a over the index vector
        for (int a = 0; a < dk; ++a) {
          std::int64_t idx =
              std::int64_t(std::floor((y[std::size_t(a)] + offset) * double(std::int64_t(1) << grid_level)));
          key = (key ^ std::uint64_t(idx)) * 1099511628211ull;
        }
      }
      out.push_back(key);
    }
  });

  std::unordered_set<std::uint64_t> occupied;
  for (auto& v : keys) occupied.insert(v.begin(), v.end());
  double cell = std::pow(0.5, grid_level);
  return double(occupied.size()) * std::pow(cell, dk);
}

double lemma1_box_integral(const TransportPlan& plan, std::span<const double> lo,
                           std::span<const double> hi, std::uint64_t samples, std::uint64_t seed) {
  int d = plan.spec.d;
  if (int(lo.size()) != d || int(hi.size()) != d)
    throw std::invalid_argument("box dimension mismatch");
  for (int i = 0; i < d; ++i)
    if (lo[std::size_t(i)] > hi[std::size_t(i)]) return 0.0;

  // membership masks and the exact support box of the integrand
  std::vector<std::vector<bool>> in_slab(plan.slabs.size(), std::vector<bool>(std::size_t(d), false));
  for (std::size_t s = 0; s < plan.slabs.size(); ++s)
    for (int c : plan.slabs[s].coords) in_slab[s][std::size_t(c - 1)] = true;

  std::vector<double> slo(std::size_t(d), 0.0), shi(std::size_t(d), 0.0);
  double vol = 1.0;
  for (int i = 0; i < d; ++i) {
    bool always_free = true;
    for (std::size_t s = 0; s < plan.slabs.size(); ++s)
      if (!in_slab[s][std::size_t(i)]) always_free = false;
    slo[std::size_t(i)] = always_free ? lo[std::size_t(i)] - 0.5 : lo[std::size_t(i)];
    shi[std::size_t(i)] = always_free ? hi[std::size_t(i)] + 0.5 : hi[std::size_t(i)];
    vol *= shi[std::size_t(i)] - slo[std::size_t(i)];
  }
  if (vol <= 0.0) return 0.0;

  int nchunks = 64;
  std::vector<double> partial(std::size_t(nchunks), 0.0);
  util::parallel_chunks(nchunks, [&](int c) {
    rng::Rng rng(seed, std::uint64_t(c) + 1);
    std::uint64_t begin = samples * std::uint64_t(c) / std::uint64_t(nchunks);
    std::uint64_t end = samples * std::uint64_t(c + 1) / std::uint64_t(nchunks);
    std::vector<double> y(std::size_t(d), 0.0);
    double acc = 0.0;
    for (std::uint64_t t = begin; t < end; ++t) {
      for (int i = 0; i < d; ++i)
        y[std::size_t(i)] = rng.uniform(slo[std::size_t(i)], shi[std::size_t(i)]);
      double g = 1.0;
      for (std::size_t s = 0; s < plan.slabs.size() && g > 0.0; ++s) {
        double p = 1.0;
        for (int i = 0; i < d && p > 0.0; ++i) {
          double a = lo[std::size_t(i)] - y[std::size_t(i)];
          double b = hi[std::size_t(i)] - y[std::size_t(i)];
          if (in_slab[s][std::size_t(i)]) {
            p *= std::max(0.0, std::min(b, 0.5) - std::max(a, -0.5));
          } else if (a > 0.0 || b < 0.0) {
            p = 0.0;
          }
        }
        g *= p;
      }
      acc += g;
    }
    partial[std::size_t(c)] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return vol * total / double(samples);
}

Lemma1Probe lemma1_exponent_probe(const TransportPlan& plan, int imax, std::uint64_t samples,
                                  std::uint64_t seed) {
  if (imax < 2) throw std::invalid_argument("probe needs at least sides 2^0..2^-2");
  int d = plan.spec.d, k = plan.spec.k;
  Lemma1Probe probe;
  probe.target = double(d) / double(d - k) - 0.1;
  std::vector<std::pair<double, double>> xy;
  for (int i = 0; i <= imax; ++i) {
    double side = std::pow(0.5, i);
    std::vector<double> lo(std::size_t(d), -side / 2.0), hi(std::size_t(d), side / 2.0);
    double lhs = lemma1_box_integral(plan, lo, hi, samples, seed + std::uint64_t(i));
    double meas = std::pow(side, d);
    probe.points.push_back({side, meas, lhs});
    if (lhs > 0.0) xy.emplace_back(meas, lhs);
  }
  if (xy.size() >= 2) {
    auto fit = core::fit_power_law(xy);
    probe.exponent = fit.exponent;
    probe.r2 = fit.r2;
  }
  probe.pass = probe.exponent >= probe.target;
  return probe;
}

bool psi0_degeneracy_check(int d, int k) {
  if (!(1 <= k && k < d)) throw std::invalid_argument("requires 1 <= k < d");
  return (d - k) * k <= d || k == 1 || k == d - 1 || d <= 4;
}

}  // namespace sumdim::infl
