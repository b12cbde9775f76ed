#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sumdim/bounds.hpp"
#include "sumdim/experiments.hpp"
#include "sumdim/fourier.hpp"
#include "sumdim/generators.hpp"
#include "sumdim/group.hpp"
#include "sumdim/inflation.hpp"

namespace sumdim::io {

using json = nlohmann::ordered_json;

// Certified growth exponent; (digits, level) identify the lifted group of
// modulus base^level recorded in the certificate.
json gamma_to_json(const group::GammaCertificate& cert, const std::vector<std::uint32_t>& digits,
                   int level);
json growth_check_to_json(const group::MassGrowthCheck& check);
json search_to_json(int n, int size, double target, const std::vector<group::DigitSetSearchEntry>& entries);

json experiment_to_json(const box::ExperimentResult& r);
std::string experiment_to_csv(const box::ExperimentResult& r);  // level,e_count,k_count,sum_count

json transport_to_json(const infl::TransportPlan& plan);
json pushforward_to_json(const infl::PushforwardReport& rep);

json decay_to_json(const fourier::DecayFit& fit, const fourier::MeasureTransform& mt);
std::string decay_to_csv(const fourier::DecayFit& fit);  // radius,sup
json energy_to_json(const fourier::EnergyGrowth& growth, double r);

json scenario_to_json(const bounds::Scenario& sc);
json report_to_json(const bounds::BoundReport& rep);
std::string report_to_csv(const bounds::BoundReport& rep);  // name,flavor,raw,effective

box::Generator parse_generator(const json& j);
bounds::Scenario parse_scenario(const json& j);

// dump(2) + trailing newline; the uniform on-disk encoding for results.
std::string pretty(const json& j);

}  // namespace sumdim::io
