#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace sumdim::io {

// Names of all shipped result/config schemas (sorted).
std::vector<std::string> schema_names();

// Parsed schema by name ("gamma-certificate", "boxdim-experiment", ...).
nlohmann::ordered_json schema(const std::string& name);

// Raw schema text as shipped in docs/schemas/<name>.json.
const char* schema_text(const std::string& name);

// Validates `value` against a schema object supporting the subset
// {type, enum, properties, required, additionalProperties, items,
//  minimum, maximum, minItems, maxItems}. Returns human-readable
// errors, one per violation, empty when valid.
std::vector<std::string> validate(const nlohmann::ordered_json& value,
                                  const nlohmann::ordered_json& schema);

// Throws std::runtime_error listing all violations if invalid.
void require_valid(const nlohmann::ordered_json& value, const std::string& schema_name);

}  // namespace sumdim::io
