#include "sumdim/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sumdim/acceptance.hpp"
#include "sumdim/bounds.hpp"
#include "sumdim/config.hpp"
#include "sumdim/experiments.hpp"
#include "sumdim/fourier.hpp"
#include "sumdim/group.hpp"
#include "sumdim/inflation.hpp"
#include "sumdim/json_io.hpp"
#include "sumdim/manifest.hpp"
#include "sumdim/rng.hpp"
#include "sumdim/schema.hpp"

namespace sumdim::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

std::string timestamp_tag() {
  std::string t = io::iso_utc_now();  // 2026-08-14T09:30:12Z
  std::string out;
  for (char c : t)
    if (c != '-' && c != ':') out += c;
  return out;
}

struct Run {
  fs::path dir;
  io::RunManifest manifest;
};

Run open_run(const std::string& requested, const std::string& sub,
             const std::vector<std::string>& args, std::uint64_t seed) {
  Run run;
  if (requested.empty()) {
    fs::path base = fs::path("runs") / (timestamp_tag() + "-" + sub);
    fs::path dir = base;
    for (int i = 2; fs::exists(dir); ++i) dir = base.string() + "-" + std::to_string(i);
    run.dir = dir;
  } else {
    run.dir = requested;
  }
  fs::create_directories(run.dir);
  run.manifest.subcommand = sub;
  run.manifest.arguments = args;
  run.manifest.seed = seed;
  run.manifest.started_at = io::iso_utc_now();
  return run;
}

void emit_file(Run& run, const std::string& rel, const std::string& bytes) {
  const fs::path p = run.dir / rel;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << bytes;
  run.manifest.outputs.push_back(rel);
}

void finish(Run& run) {
  run.manifest.finished_at = io::iso_utc_now();
  io::write_manifest(run.manifest, run.dir);
}

// ---- subcommand argument bags ---------------------------------------------

struct GammaArgs {
  int n = 3;
  std::vector<std::uint32_t> digits;
  int level = 1;
  bool exhaustive = false;
  bool random = false;
  std::uint64_t trials = 100000;
  bool unit_dedup = false;
  std::uint64_t growth_trials = 0;
  std::uint64_t seed = 42;
  bool json = false;
  std::string outdir;
};

struct SearchArgs {
  int n = 5;
  int size = 2;
  double target = 0.0;
  bool json = false;
  std::string outdir;
};

struct BoxdimArgs {
  std::string config;
  bool json = false;
  std::string outdir;
};

struct InflArgs {
  int d = 2;
  int k = 1;
  bool mc = false;
  int boxes = 20;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  bool json = false;
  std::string outdir;
};

struct FourierArgs {
  std::string measure = "cantor:3:0,2";
  std::string octaves = "4:12";
  int radii = 64;
  int directions = 32;
  double energy_r = 0.0;
  bool dt = false;
  std::uint64_t seed = 42;
  bool json = false;
  std::string outdir;
};

struct BoundsArgs {
  std::string scenario;
  bool json = false;
  std::string outdir;
};

struct VerifyArgs {
  std::uint64_t seed = 42;
  bool deep = false;
  std::string outdir;
};

// ---- measure spec parsing ---------------------------------------------------

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (cur.empty()) throw std::invalid_argument("empty entry in list \"" + s + "\"");
      out.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

fourier::MeasureTransform parse_measure(const std::string& spec, bool dt) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec + ":") {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (parts.empty()) throw std::invalid_argument("empty measure spec");
  const std::string& kind = parts[0];
  if (kind == "cantor") {
    if (parts.size() != 3)
      throw std::invalid_argument("cantor measure spec is cantor:<base>:<digit,digit,...>");
    return fourier::cantor_measure(core::DigitCantorSpec(std::stoi(parts[1]), parse_int_list(parts[2])));
  }
  if (kind == "parabola" && parts.size() == 1)
    return fourier::curve_measure(fourier::parabola_curve(), !dt);
  if (kind == "segment" && parts.size() == 1)
    return fourier::curve_measure(fourier::segment_curve(), !dt);
  if (kind == "moment") {
    if (parts.size() != 2) throw std::invalid_argument("moment measure spec is moment:<dimension>");
    return fourier::curve_measure(fourier::moment_curve(std::stoi(parts[1])), !dt);
  }
  if (kind == "uniform" && parts.size() == 1) return fourier::uniform_interval_measure();
  if (kind == "point" && parts.size() == 1) return fourier::point_mass_measure(1);
  throw std::invalid_argument("unknown measure spec: " + spec);
}

std::pair<int, int> parse_octaves(const std::string& s) {
  auto pos = s.find(':');
  if (pos == std::string::npos)
    throw std::invalid_argument("octave range must be <low>:<high>, got \"" + s + "\"");
  return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 1))};
}

// ---- subcommand drivers -----------------------------------------------------

int run_gamma(const GammaArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  if (a.random && a.exhaustive)
    throw std::invalid_argument("--exhaustive and --random are mutually exclusive");
  core::DigitCantorSpec spec(a.n, std::vector<int>(a.digits.begin(), a.digits.end()));
  std::uint64_t m = 1;
  for (int i = 0; i < a.level; ++i) {
    m *= std::uint64_t(a.n);  // stays < 2^61: m <= 2^30 before the multiply
    if (m > (1ull << 30))
      throw std::invalid_argument("modulus " + std::to_string(a.n) + "^" +
                                  std::to_string(a.level) + " exceeds 2^30");
  }
  const auto S = group::level_digit_set(spec, a.level);

  group::SearchMode mode;
  if (a.random)
    mode = group::RandomMode{a.trials, rng::mix_seed(a.seed, 1)};
  else
    mode = group::ExhaustiveMode{a.unit_dedup};
  const auto cert = group::best_gamma(std::uint32_t(m), S, mode);

  io::json j = io::gamma_to_json(cert, a.digits, a.level);
  bool finding = false;
  if (a.growth_trials > 0) {
    auto check = group::random_mass_growth_check(spec, a.level, cert.gamma_star, a.growth_trials,
                                                 rng::mix_seed(a.seed, 2));
    j["growth_check"] = io::growth_check_to_json(check);
    finding = !check.pass();
  }
  io::require_valid(j, "gamma-certificate");

  Run run = open_run(a.outdir, "gamma", argv, a.seed);
  emit_file(run, "gamma.json", io::pretty(j));
  finish(run);

  out << "gamma* = " << fmt(cert.gamma_star) << " over Z_" << m
      << (cert.exhaustive ? " (exhaustive)" : " (random search)") << "  ["
      << j.at("citation").get<std::string>() << "]\n";
  if (!cert.unconstrained)
    out << "witness E = " << cert.witness.mask_hex() << " (|E| = " << cert.witness.popcount()
        << ")\n";
  else
    out << "no nonempty proper subset constrains the exponent; gamma* = 0\n";
  if (a.growth_trials > 0)
    out << "mass growth check: " << (finding ? "VIOLATED" : "passed") << " over "
        << a.growth_trials << " random subsets\n";
  if (a.json) out << io::pretty(j);
  out << "results in " << run.dir.string() << "\n";
  return finding ? 1 : 0;
}

int run_search(const SearchArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  const auto entries = group::search_digit_sets(a.n, a.size, a.target);
  io::json j = io::search_to_json(a.n, a.size, a.target, entries);
  io::require_valid(j, "gamma-search");

  Run run = open_run(a.outdir, "gamma-search", argv, 0);
  emit_file(run, "gamma-search.json", io::pretty(j));
  finish(run);

  int flagged = 0;
  for (const auto& e : entries)
    if (e.flagged) ++flagged;
  out << flagged << " of " << entries.size() << " digit sets in Z_" << a.n << " with |S| = "
      << a.size << " reach gamma* <= " << fmt(a.target) << "\n";
  for (const auto& e : entries)
    if (e.flagged) {
      out << "  S = {";
      for (std::size_t i = 0; i < e.S.size(); ++i) out << (i ? "," : "") << e.S[i];
      out << "}  gamma* = " << fmt(e.gamma_star) << "\n";
    }
  if (a.json) out << io::pretty(j);
  out << "results in " << run.dir.string() << "\n";
  return 0;
}

int run_boxdim(const BoxdimArgs& a, const std::vector<std::string>& argv, std::ostream& out,
               std::ostream& err) {
  auto cfg = io::load_boxdim_config(a.config);
  for (const auto& w : cfg.warnings) err << "warning: " << w << "\n";

  auto res = box::dim_sumset_experiment(cfg.e, cfg.k, cfg.base, cfg.levels, cfg.bound);
  io::json j = io::experiment_to_json(res);
  io::require_valid(j, "boxdim-experiment");

  Run run = open_run(a.outdir, "boxdim", argv, 0);
  run.manifest.config_hash = io::hash_tag(cfg.text);
  emit_file(run, "boxdim.json", io::pretty(j));
  emit_file(run, "levels.csv", io::experiment_to_csv(res));
  finish(run);

  out << "E = " << res.e_desc << "\nK = " << res.k_desc << "\n";
  out << "slope = " << fmt(res.fit.slope) << " (r2 = " << fmt(res.fit.r2)
      << ")  [least-squares slope of ln count against level * ln base]\n";
  if (res.bound.name != "none")
    out << "bound \"" << res.bound.name << "\": slope >= " << fmt(res.bound.value) << " - "
        << fmt(res.bound.tolerance) << " -> " << (res.pass ? "holds" : "VIOLATED") << "\n";
  if (a.json) out << io::pretty(j);
  out << "results in " << run.dir.string() << "\n";
  return res.pass ? 0 : 1;
}

int run_inflation(const InflArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  auto plan = infl::build_transport(infl::build_inflation(a.d, a.k));
  io::json j = io::transport_to_json(plan);
  bool finding = !(plan.det_ok && plan.block_unit_lower);

  if (a.mc) {
    auto boxes = infl::random_image_boxes(plan, a.boxes, rng::mix_seed(a.seed, 1));
    auto rep = infl::mc_pushforward_check(plan, boxes, a.samples, rng::mix_seed(a.seed, 2));
    j["pushforward"] = io::pushforward_to_json(rep);
    finding = finding || !rep.pass;
  }
  io::require_valid(j, "inflation-transport");

  Run run = open_run(a.outdir, "inflation", argv, a.seed);
  emit_file(run, "inflation.json", io::pretty(j));
  finish(run);

  out << "psi = " << j.at("map").get<std::string>() << "\n";
  out << "|det M| = " << fmt(plan.abs_det)
      << "  [change of variables from slab parameters to image coordinates]\n";
  out << "parameter-class block unit lower triangular: " << (plan.block_unit_lower ? "yes" : "NO")
      << "\n";
  if (a.mc)
    out << "pushforward volume check (3 sigma, " << a.samples << " samples x " << a.boxes
        << " boxes): " << (j.at("pushforward").at("pass").get<bool>() ? "passed" : "VIOLATED")
        << "\n";
  if (a.json) out << io::pretty(j);
  out << "results in " << run.dir.string() << "\n";
  return finding ? 1 : 0;
}

int run_fourier(const FourierArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  auto mt = parse_measure(a.measure, a.dt);
  auto [m0, m1] = parse_octaves(a.octaves);

  fourier::DecayFitOptions opt;
  opt.m0 = m0;
  opt.m1 = m1;
  opt.radii = a.radii;
  opt.directions = a.directions;
  opt.seed = rng::mix_seed(a.seed, 1);
  auto fit = fourier::decay_fit(mt, opt);

  io::json j = io::decay_to_json(fit, mt);
  if (a.energy_r > 0.0) {
    if (mt.d != 1)
      throw std::invalid_argument("energy growth is supported for measures on the line only");
    std::vector<double> lambdas;
    for (int m = m0; m <= m1; ++m) lambdas.push_back(std::ldexp(1.0, m));
    j["energy"] = io::energy_to_json(fourier::energy_growth(mt, a.energy_r, mt.d, lambdas),
                                     a.energy_r);
  }
  io::require_valid(j, "fourier-decay");

  Run run = open_run(a.outdir, "fourier", argv, a.seed);
  emit_file(run, "fourier.json", io::pretty(j));
  emit_file(run, "decay.csv", io::decay_to_csv(fit));
  finish(run);

  out << "measure: " << mt.describe() << "\n";
  out << "decay exponent = " << fmt(fit.exponent) << " (r2 = " << fmt(fit.r2)
      << ")  [per-octave sup of |mu_hat| fitted against radius]\n";
  if (a.energy_r > 0.0)
    out << "energy growth exponent at r = " << fmt(a.energy_r) << ": "
        << fmt(j.at("energy").at("exponent").get<double>())
        << "  [partial sums of |xi|^(r-d) |mu_hat|^2 against cutoff]\n";
  if (a.json) out << io::pretty(j);
  out << "results in " << run.dir.string() << "\n";
  return 0;
}

int run_bounds(const BoundsArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  std::string raw;
  auto sc = io::load_scenario(a.scenario, &raw);
  auto rep = bounds::tabulate(sc);
  io::json j = io::report_to_json(rep);
  io::require_valid(j, "bound-report");

  Run run = open_run(a.outdir, "bounds", argv, 0);
  run.manifest.config_hash = io::hash_tag(raw);
  emit_file(run, "bounds.json", io::pretty(j));
  emit_file(run, "bounds.csv", io::report_to_csv(rep));
  finish(run);

  out << "scenario: " << sc.kind << " in R^" << sc.d << ", alpha = " << fmt(sc.alpha)
      << ", beta = " << fmt(sc.beta) << "\n";
  for (const auto& e : rep.entries)
    out << "  " << e.name << " [" << e.flavor << "] = " << fmt(e.effective) << "  [" << e.citation
        << "]\n";
  out << "best minkowski = " << fmt(rep.best_minkowski)
      << ", best hausdorff = " << fmt(rep.best_hausdorff) << "\n";
  if (a.json) out << io::pretty(j);
  out << "results in " << run.dir.string() << "\n";
  return 0;
}

int run_verify(const VerifyArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  Run run = open_run(a.outdir, "verify-all", argv, a.seed);
  auto results = accept::run_criteria(a.seed, a.deep);
  accept::write_artifacts(results, a.seed, a.deep, run.dir);
  for (const auto& r : results) {
    char idx[16];
    std::snprintf(idx, sizeof(idx), "criterion_%02d", r.index);
    run.manifest.outputs.push_back(std::string("results/") + idx + ".json");
  }
  run.manifest.outputs.push_back("results/summary.json");
  finish(run);

  for (const auto& r : results) {
    char line[32];
    std::snprintf(line, sizeof(line), "criterion %02d ", r.index);
    out << line << (r.pass ? "PASS" : "FAIL") << "  " << r.name << " -- " << r.detail << "\n";
  }
  const bool ok = accept::all_pass(results);
  out << (ok ? "all criteria passed" : "CRITERIA FAILED") << "; results in " << run.dir.string()
      << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"growth laboratory for dimensions of sums of sets"};
  app.name("sumdim");
  app.require_subcommand(1);

  GammaArgs ga;
  auto* gamma = app.add_subcommand("gamma", "certified growth exponent over a cyclic group");
  gamma->add_option("--n", ga.n, "digit base (group is Z_{n^level})")->required();
  gamma->add_option("--digits", ga.digits, "digit set, comma separated, e.g. 0,2")
      ->required()
      ->delimiter(',');
  gamma->add_option("--level", ga.level, "lifting level L (modulus n^L)")->check(CLI::Range(1, 30));
  gamma->add_flag("--exhaustive", ga.exhaustive, "exhaustive subset search (default)");
  gamma->add_flag("--random", ga.random, "random subset search instead of exhaustive");
  gamma->add_option("--trials", ga.trials, "random-search trial count");
  gamma->add_flag("--unit-dedup", ga.unit_dedup, "dedup exhaustive search by unit rotations");
  gamma->add_option("--growth-trials", ga.growth_trials,
                    "also run the random mass growth check with this many subsets");
  gamma->add_option("--seed", ga.seed, "random seed");
  gamma->add_flag("--json", ga.json, "print result JSON to stdout");
  gamma->add_option("--outdir", ga.outdir, "output directory (default runs/<timestamp>-gamma)");

  SearchArgs sa;
  auto* search = app.add_subcommand("gamma-search", "score all digit sets of a given size");
  search->add_option("--n", sa.n, "digit base")->required();
  search->add_option("--size", sa.size, "digit-set size |S|")->required();
  search->add_option("--target", sa.target, "flag digit sets with gamma* <= target")->required();
  search->add_flag("--json", sa.json, "print result JSON to stdout");
  search->add_option("--outdir", sa.outdir, "output directory");

  BoxdimArgs ba;
  auto* boxdim = app.add_subcommand("boxdim", "box-counting slope of a sumset experiment");
  boxdim->add_option("--config", ba.config, "experiment config JSON")->required();
  boxdim->add_flag("--json", ba.json, "print result JSON to stdout");
  boxdim->add_option("--outdir", ba.outdir, "output directory");

  InflArgs ia;
  auto* inflation = app.add_subcommand("inflation", "signed-sum inflation map and transport plan");
  inflation->add_option("--d", ia.d, "ambient dimension d")->required();
  inflation->add_option("--k", ia.k, "surface dimension k")->required();
  inflation->add_flag("--mc", ia.mc, "run the Monte Carlo pushforward volume check");
  inflation->add_option("--boxes", ia.boxes, "number of random image boxes")
      ->check(CLI::Range(1, 1000));
  inflation->add_option("--samples", ia.samples, "Monte Carlo samples per check");
  inflation->add_option("--seed", ia.seed, "random seed");
  inflation->add_flag("--json", ia.json, "print result JSON to stdout");
  inflation->add_option("--outdir", ia.outdir, "output directory");

  FourierArgs fa;
  auto* four = app.add_subcommand("fourier", "transform decay fit for a fractal measure");
  four->add_option("--measure", fa.measure,
                   "measure spec: cantor:<n>:<digits> | parabola | segment | moment:<d> | "
                   "uniform | point");
  four->add_option("--octaves", fa.octaves, "octave range low:high (radii 2^low .. 2^high)");
  four->add_option("--radii", fa.radii, "radii sampled per octave")->check(CLI::Range(2, 4096));
  four->add_option("--directions", fa.directions, "unit directions sampled per radius")
      ->check(CLI::Range(1, 4096));
  four->add_option("--energy-r", fa.energy_r, "also sum the r-energy partial sums (d = 1 only)");
  four->add_flag("--dt", fa.dt, "use parameter measure dt instead of arclength on curves");
  four->add_option("--seed", fa.seed, "random seed");
  four->add_flag("--json", fa.json, "print result JSON to stdout");
  four->add_option("--outdir", fa.outdir, "output directory");

  BoundsArgs oa;
  auto* bnds = app.add_subcommand("bounds", "tabulate dimension lower bounds for a scenario");
  bnds->add_option("--scenario", oa.scenario, "scenario JSON file")->required();
  bnds->add_flag("--json", oa.json, "print result JSON to stdout");
  bnds->add_option("--outdir", oa.outdir, "output directory");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify-all", "run the full seeded verification suite");
  verify->add_option("--seed", va.seed, "random seed");
  verify->add_flag("--deep", va.deep, "include the slow exhaustive level-3 lift");
  verify->add_option("--outdir", va.outdir, "output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(gamma)) return run_gamma(ga, args, out);
    if (app.got_subcommand(search)) return run_search(sa, args, out);
    if (app.got_subcommand(boxdim)) return run_boxdim(ba, args, out, err);
    if (app.got_subcommand(inflation)) return run_inflation(ia, args, out);
    if (app.got_subcommand(four)) return run_fourier(fa, args, out);
    if (app.got_subcommand(bnds)) return run_bounds(oa, args, out);
    if (app.got_subcommand(verify)) return run_verify(va, args, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand selected\n";
  return 2;
}

}  // namespace sumdim::cli
