#include "sumdim/json_io.hpp"

#include <initializer_list>
#include <stdexcept>

namespace sumdim::io {

namespace {

constexpr const char* kGammaCitation =
    "optimal growth exponent of log(|E+S|/m)/log(|E|/m) over nonempty proper subsets of Z_m";

json witness_to_json(const group::GroupSubset& w) {
  json jw;
  jw["mask"] = w.mask_hex();
  json members = json::array();
  for (auto v : w.members()) members.push_back(v);
  jw["members"] = std::move(members);
  return jw;
}

json level_rows(const box::ExperimentResult& r) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.sum_counts.size(); ++i) {
    json row;
    row["level"] = r.sum_counts[i].level;
    row["e_count"] = r.e_counts[i].count;
    row["k_count"] = r.k_counts[i].count;
    row["sum_count"] = r.sum_counts[i].count;
    rows.push_back(std::move(row));
  }
  return rows;
}

json int_matrix(const std::vector<std::vector<int>>& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

}  // namespace

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

json gamma_to_json(const group::GammaCertificate& cert,
                   const std::vector<std::uint32_t>& digits, int level) {
  json j;
  j["format"] = "gamma-certificate/1";
  j["modulus"] = cert.m;
  j["digits"] = digits;
  j["level"] = level;
  j["gamma_star"] = cert.gamma_star;
  j["exhaustive"] = cert.exhaustive;
  j["unconstrained"] = cert.unconstrained;
  if (!cert.unconstrained) j["witness"] = witness_to_json(cert.witness);
  j["citation"] = kGammaCitation;
  return j;
}

json growth_check_to_json(const group::MassGrowthCheck& check) {
  json j;
  j["trials"] = check.trials;
  j["seed"] = check.seed;
  json viol = json::array();
  for (const auto& v : check.violations) {
    json jv;
    jv["mask"] = v.mask_hex;
    jv["e_count"] = v.e_count;
    jv["sum_count"] = v.sum_count;
    jv["lhs_log"] = v.lhs_log;
    jv["rhs_log"] = v.rhs_log;
    viol.push_back(std::move(jv));
  }
  j["violations"] = std::move(viol);
  j["pass"] = check.pass();
  return j;
}

json search_to_json(int n, int size, double target,
                    const std::vector<group::DigitSetSearchEntry>& entries) {
  json j;
  j["format"] = "gamma-search/1";
  j["n"] = n;
  j["size"] = size;
  j["target"] = target;
  json rows = json::array();
  for (const auto& e : entries) {
    json row;
    row["digits"] = e.S;
    row["gamma_star"] = e.gamma_star;
    row["flagged"] = e.flagged;
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

json experiment_to_json(const box::ExperimentResult& r) {
  json j;
  j["format"] = "boxdim-experiment/1";
  j["e"] = r.e_desc;
  j["k"] = r.k_desc;
  j["base"] = r.base;
  j["levels"] = level_rows(r);
  json fit;
  fit["slope"] = r.fit.slope;
  fit["intercept"] = r.fit.intercept;
  fit["r2"] = r.fit.r2;
  j["fit"] = std::move(fit);
  json bound;
  bound["name"] = r.bound.name;
  bound["value"] = r.bound.value;
  bound["tolerance"] = r.bound.tolerance;
  j["bound"] = std::move(bound);
  j["pass"] = r.pass;
  return j;
}

std::string experiment_to_csv(const box::ExperimentResult& r) {
  std::string csv = "level,e_count,k_count,sum_count\n";
  for (std::size_t i = 0; i < r.sum_counts.size(); ++i) {
    csv += std::to_string(r.sum_counts[i].level);
    csv += ',';
    csv += std::to_string(r.e_counts[i].count);
    csv += ',';
    csv += std::to_string(r.k_counts[i].count);
    csv += ',';
    csv += std::to_string(r.sum_counts[i].count);
    csv += '\n';
  }
  return csv;
}

json transport_to_json(const infl::TransportPlan& plan) {
  json j;
  j["format"] = "inflation-transport/1";
  j["d"] = plan.spec.d;
  j["k"] = plan.spec.k;
  j["q"] = plan.spec.q;
  j["r"] = plan.spec.r;
  j["n"] = plan.spec.n;
  j["map"] = infl::format_map(plan.spec);
  j["T"] = int_matrix(plan.spec.T);
  json slabs = json::array();
  for (const auto& s : plan.slabs) slabs.push_back(s.coords);
  j["slabs"] = std::move(slabs);
  j["abs_det"] = plan.abs_det;
  j["det_ok"] = plan.det_ok;
  j["second_block"] = int_matrix(plan.second_block);
  j["block_unit_lower"] = plan.block_unit_lower;
  j["psi0_can_be_nondegenerate"] = infl::psi0_degeneracy_check(plan.spec.d, plan.spec.k);
  return j;
}

json pushforward_to_json(const infl::PushforwardReport& rep) {
  json j;
  j["samples"] = rep.samples;
  j["seed"] = rep.seed;
  j["pass"] = rep.pass;
  json boxes = json::array();
  for (const auto& e : rep.entries) {
    json jb;
    jb["volume"] = e.vol;
    jb["estimate"] = e.estimate;
    jb["stderr"] = e.se;
    jb["pass"] = e.pass;
    boxes.push_back(std::move(jb));
  }
  j["boxes"] = std::move(boxes);
  return j;
}

json decay_to_json(const fourier::DecayFit& fit, const fourier::MeasureTransform& mt) {
  json j;
  j["format"] = "fourier-decay/1";
  j["measure"] = mt.describe();
  j["dimension"] = mt.d;
  json sups = json::array();
  for (const auto& s : fit.sups) {
    json row;
    row["radius"] = s.radius;
    row["sup"] = s.sup;
    sups.push_back(std::move(row));
  }
  j["sups"] = std::move(sups);
  j["exponent"] = fit.exponent;
  j["r2"] = fit.r2;
  return j;
}

std::string decay_to_csv(const fourier::DecayFit& fit) {
  std::string csv = "radius,sup\n";
  for (const auto& s : fit.sups) {
    csv += json(s.radius).dump();
    csv += ',';
    csv += json(s.sup).dump();
    csv += '\n';
  }
  return csv;
}

json energy_to_json(const fourier::EnergyGrowth& growth, double r) {
  json j;
  j["r"] = r;
  json partials = json::array();
  for (const auto& [lambda, value] : growth.partials) partials.push_back(json::array({lambda, value}));
  j["partials"] = std::move(partials);
  j["exponent"] = growth.exponent;
  j["r2"] = growth.r2;
  return j;
}

json scenario_to_json(const bounds::Scenario& sc) {
  json j;
  j["d"] = sc.d;
  j["kind"] = sc.kind;
  j["alpha"] = sc.alpha;
  j["beta"] = sc.beta;
  if (sc.n > 0) j["n"] = sc.n;
  if (!sc.digits.empty()) j["digits"] = sc.digits;
  if (sc.k > 0) j["k"] = sc.k;
  if (sc.decay_s > 0) j["decay_s"] = sc.decay_s;
  if (sc.p > 0) j["p"] = sc.p;
  if (sc.q > 0) j["q"] = sc.q;
  if (sc.gamma) j["gamma"] = *sc.gamma;
  return j;
}

json report_to_json(const bounds::BoundReport& rep) {
  json j;
  j["format"] = "bound-report/1";
  j["scenario"] = scenario_to_json(rep.scenario);
  json rows = json::array();
  for (const auto& e : rep.entries) {
    json row;
    row["name"] = e.name;
    row["flavor"] = e.flavor;
    row["raw"] = e.raw;
    row["effective"] = e.effective;
    row["citation"] = e.citation;
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  j["best_minkowski"] = rep.best_minkowski;
  j["best_hausdorff"] = rep.best_hausdorff;
  return j;
}

std::string report_to_csv(const bounds::BoundReport& rep) {
  std::string csv = "name,flavor,raw,effective\n";
  for (const auto& e : rep.entries) {
    csv += e.name;
    csv += ',';
    csv += e.flavor;
    csv += ',';
    csv += json(e.raw).dump();
    csv += ',';
    csv += json(e.effective).dump();
    csv += '\n';
  }
  return csv;
}

box::Generator parse_generator(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw std::invalid_argument("generator must be an object with a string \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();

  auto need = [&](std::initializer_list<const char*> keys) {
    for (const char* key : keys)
      if (!j.contains(key))
        throw std::invalid_argument("generator \"" + kind + "\" requires key \"" + key + "\"");
  };
  auto only = [&](std::initializer_list<const char*> keys) {
    for (const auto& [key, val] : j.items()) {
      (void)val;
      if (key == "kind") continue;
      bool known = false;
      for (const char* k : keys)
        if (key == k) known = true;
      if (!known)
        throw std::invalid_argument("generator \"" + kind + "\" does not accept key \"" + key + "\"");
    }
  };

  if (kind == "digit_cantor") {
    need({"base", "digits"});
    only({"base", "digits"});
    core::DigitCantorSpec spec(j.at("base").get<int>(), j.at("digits").get<std::vector<int>>());
    return box::Generator{box::DigitCantorGen{spec}};
  }
  if (kind == "ratio_cantor") {
    need({"a"});
    only({"a"});
    return box::Generator{box::RatioCantorGen{j.at("a").get<double>()}};
  }
  if (kind == "product") {
    need({"g1", "g2"});
    only({"g1", "g2"});
    return box::make_product(parse_generator(j.at("g1")), parse_generator(j.at("g2")));
  }
  if (kind == "graph_curve") {
    only({"f", "domain"});
    box::GraphCurveGen g;
    if (j.contains("f")) g.f = j.at("f").get<std::string>();
    if (j.contains("domain")) {
      auto dom = j.at("domain").get<std::vector<double>>();
      if (dom.size() != 2 || dom[0] >= dom[1])
        throw std::invalid_argument("generator domain must be [t0, t1] with t0 < t1");
      g.t0 = dom[0];
      g.t1 = dom[1];
    }
    return box::Generator{g};
  }
  if (kind == "parametric_curve") {
    only({"name", "domain"});
    box::ParametricCurveGen g;
    if (j.contains("name")) g.name = j.at("name").get<std::string>();
    if (j.contains("domain")) {
      auto dom = j.at("domain").get<std::vector<double>>();
      if (dom.size() != 2 || dom[0] >= dom[1])
        throw std::invalid_argument("generator domain must be [t0, t1] with t0 < t1");
      g.t0 = dom[0];
      g.t1 = dom[1];
    }
    return box::Generator{g};
  }
  if (kind == "polygon_k0") {
    only({});
    return box::Generator{box::PolygonK0Gen{}};
  }
  if (kind == "disk") {
    only({"center", "radius"});
    box::DiskGen g;
    if (j.contains("center")) {
      auto c = j.at("center").get<std::vector<double>>();
      if (c.size() != 2) throw std::invalid_argument("disk center must have 2 coordinates");
      g.cx = c[0];
      g.cy = c[1];
    }
    if (j.contains("radius")) g.radius = j.at("radius").get<double>();
    if (g.radius <= 0) throw std::invalid_argument("disk radius must be positive");
    return box::Generator{g};
  }
  if (kind == "box") {
    need({"corner", "side"});
    only({"corner", "side"});
    box::BoxGen g;
    g.corner = j.at("corner").get<std::vector<double>>();
    g.side = j.at("side").get<double>();
    if (g.corner.empty() || g.corner.size() > 6)
      throw std::invalid_argument("box corner must have 1..6 coordinates");
    if (g.side <= 0) throw std::invalid_argument("box side must be positive");
    return box::Generator{g};
  }
  throw std::invalid_argument("unknown generator kind: " + kind);
}

bounds::Scenario parse_scenario(const json& j) {
  bounds::Scenario sc;
  sc.d = j.at("d").get<int>();
  sc.kind = j.at("kind").get<std::string>();
  sc.beta = j.at("beta").get<double>();
  if (j.contains("alpha")) sc.alpha = j.at("alpha").get<double>();
  if (j.contains("n")) sc.n = j.at("n").get<int>();
  if (j.contains("digits")) sc.digits = j.at("digits").get<std::vector<int>>();
  if (j.contains("k")) sc.k = j.at("k").get<int>();
  if (j.contains("decay_s")) sc.decay_s = j.at("decay_s").get<double>();
  if (j.contains("p")) sc.p = j.at("p").get<double>();
  if (j.contains("q")) sc.q = j.at("q").get<double>();
  if (j.contains("gamma")) sc.gamma = j.at("gamma").get<double>();
  return sc;
}

}  // namespace sumdim::io
