#include "sumdim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sumdim/group.hpp"
#include "sumdim/parallel.hpp"

namespace sumdim::box {

namespace {

std::vector<int> checked_levels(std::span<const int> levels) {
  if (levels.size() < 2) throw std::invalid_argument("need at least two levels to fit a slope");
  std::vector<int> out(levels.begin(), levels.end());
  if (!std::is_sorted(out.begin(), out.end()))
    throw std::invalid_argument("levels must be ascending");
  for (int L : out)
    if (L < 1) throw std::invalid_argument("levels must be >= 1");
  return out;
}

ExperimentResult run_levels(const Generator& gE, const Generator& gK, int b,
                            std::span<const int> levels, BoundCheck bound) {
  auto lv = checked_levels(levels);
  ExperimentResult res;
  res.e_desc = describe(gE);
  res.k_desc = describe(gK);
  res.base = b;
  res.bound = std::move(bound);
  std::size_t n = lv.size();
  res.sum_counts.resize(n);
  res.e_counts.resize(n);
  res.k_counts.resize(n);
  util::parallel_chunks(int(n), [&](int i) {
    int L = lv[std::size_t(i)];
    core::CellSet E = rasterize(gE, b, L);
    core::CellSet K = rasterize(gK, b, L);
    res.e_counts[std::size_t(i)] = {L, E.count()};
    res.k_counts[std::size_t(i)] = {L, K.count()};
    res.sum_counts[std::size_t(i)] = {L, core::sumset_count(E, K)};
  });
  std::vector<std::pair<int, std::uint64_t>> pts;
  for (const auto& lc : res.sum_counts) pts.emplace_back(lc.level, lc.count);
  res.fit = core::fit_dimension(pts, b);
  res.pass = res.fit.slope >= res.bound.value - res.bound.tolerance;
  return res;
}

}  // namespace

ExperimentResult dim_sumset_experiment(const Generator& gE, const Generator& gK, int b,
                                       std::span<const int> levels, BoundCheck bound) {
  return run_levels(gE, gK, b, levels, std::move(bound));
}

ExperimentResult ca_sum_experiment(double a, double b_ratio, std::span<const int> levels,
                                   BoundCheck bound) {
  Generator gE{RatioCantorGen{a}};
  Generator gK{RatioCantorGen{b_ratio}};
  return run_levels(gE, gK, 2, levels, std::move(bound));
}

MassGrowthResult mass_growth_experiment(const core::DigitCantorSpec& spec, const core::CellSet& F,
                                        int L) {
  if (F.dim() != 1) throw std::invalid_argument("growth experiment needs a 1-d cell set");
  if (F.base() != spec.base || F.level() != L)
    throw std::invalid_argument("F must live on the (base, L) grid of the digit spec");
  std::vector<std::uint32_t> S(spec.digits.begin(), spec.digits.end());
  auto cert = group::best_gamma(std::uint32_t(spec.base), S, group::ExhaustiveMode{});
  Generator gK{DigitCantorGen{spec}};
  core::CellSet K = rasterize(gK, spec.base, L);
  MassGrowthResult res;
  res.gamma = cert.gamma_star;
  res.lhs = F.empty() ? 0.0 : core::sumset_cells(F, K).measure();
  res.rhs = F.empty() ? 0.0 : std::pow(F.measure(), cert.gamma_star) / 2.0;
  res.pass = res.lhs + 1e-12 >= res.rhs;
  return res;
}

Est6Result est6_experiment(const Generator& gK, const Generator& gE, int b, int L) {
  core::CellSet K = rasterize(gK, b, L);
  core::CellSet E = rasterize(gE, b, L);
  if (K.dim() != 2 || E.dim() != 2)
    throw std::invalid_argument("difference-set experiment requires planar generators");
  Est6Result res;
  core::CellSet KK = core::diffset_cells(K, K);
  res.kk_measure = KK.measure();
  res.e_measure = E.measure();
  res.lhs = E.empty() || K.empty() ? 0.0 : double(core::sumset_count(K, E)) * E.cell_width() *
                                               E.cell_width();
  res.rhs = std::sqrt(res.kk_measure * res.e_measure);
  double layer = double(core::boundary_count(KK)) * KK.cell_width() * KK.cell_width();
  res.slack = res.rhs - std::sqrt(std::max(0.0, res.kk_measure - layer) * res.e_measure);
  res.pass = res.lhs >= res.rhs - res.slack - 1e-12;
  return res;
}

}  // namespace sumdim::box
