#include "sumdim/schema.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sumdim/schemas_generated.hpp"

namespace sumdim::io {

using json = nlohmann::ordered_json;

namespace {

const std::map<std::string, const char*>& schema_map() {
  static const std::map<std::string, const char*> m = [] {
    std::map<std::string, const char*> out;
    for (const auto& [name, text] : detail::kSchemas) out.emplace(name, text);
    return out;
  }();
  return m;
}

std::string type_name(const json& v) {
  if (v.is_object()) return "object";
  if (v.is_array()) return "array";
  if (v.is_string()) return "string";
  if (v.is_boolean()) return "boolean";
  if (v.is_number_integer() || v.is_number_unsigned()) return "integer";
  if (v.is_number()) return "number";
  if (v.is_null()) return "null";
  return "unknown";
}

bool matches_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
  if (t == "number") return v.is_number();
  if (t == "null") return v.is_null();
  throw std::runtime_error("schema uses unsupported type: " + t);
}

void check(const json& v, const json& s, const std::string& path, std::vector<std::string>& errs) {
  const std::string where = path.empty() ? "$" : path;

  if (auto it = s.find("enum"); it != s.end()) {
    bool hit = false;
    for (const auto& cand : *it)
      if (cand == v) { hit = true; break; }
    if (!hit) {
      errs.push_back(where + ": value " + v.dump() + " not in enum " + it->dump());
      return;
    }
  }

  if (auto it = s.find("type"); it != s.end()) {
    if (!matches_type(v, it->get<std::string>())) {
      errs.push_back(where + ": expected " + it->get<std::string>() + ", got " + type_name(v));
      return;
    }
  }

  if (v.is_number()) {
    const double x = v.get<double>();
    if (auto it = s.find("minimum"); it != s.end() && x < it->get<double>())
      errs.push_back(where + ": " + v.dump() + " below minimum " + it->dump());
    if (auto it = s.find("maximum"); it != s.end() && x > it->get<double>())
      errs.push_back(where + ": " + v.dump() + " above maximum " + it->dump());
  }

  if (v.is_object()) {
    const json* props = nullptr;
    if (auto it = s.find("properties"); it != s.end()) props = &*it;
    if (auto it = s.find("required"); it != s.end())
      for (const auto& key : *it)
        if (!v.contains(key.get<std::string>()))
          errs.push_back(where + ": missing required key \"" + key.get<std::string>() + "\"");
    const bool closed = s.value("additionalProperties", true) == json(false);
    for (const auto& [key, val] : v.items()) {
      const json* sub = nullptr;
      if (props) {
        if (auto it = props->find(key); it != props->end()) sub = &*it;
      }
      if (sub)
        check(val, *sub, where + "." + key, errs);
      else if (closed)
        errs.push_back(where + ": unexpected key \"" + key + "\"");
    }
  }

  if (v.is_array()) {
    if (auto it = s.find("minItems"); it != s.end() && v.size() < it->get<std::size_t>())
      errs.push_back(where + ": fewer than " + it->dump() + " items");
    if (auto it = s.find("maxItems"); it != s.end() && v.size() > it->get<std::size_t>())
      errs.push_back(where + ": more than " + it->dump() + " items");
    if (auto it = s.find("items"); it != s.end()) {
      std::size_t i = 0;
      for (const auto& elem : v) check(elem, *it, where + "[" + std::to_string(i++) + "]", errs);
    }
  }
}

}  // namespace

std::vector<std::string> schema_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : schema_map()) out.push_back(name);
  return out;
}

const char* schema_text(const std::string& name) {
  auto it = schema_map().find(name);
  if (it == schema_map().end()) throw std::runtime_error("unknown schema: " + name);
  return it->second;
}

json schema(const std::string& name) { return json::parse(schema_text(name)); }

std::vector<std::string> validate(const json& value, const json& s) {
  std::vector<std::string> errs;
  check(value, s, "", errs);
  return errs;
}

void require_valid(const json& value, const std::string& schema_name) {
  auto errs = validate(value, schema(schema_name));
  if (errs.empty()) return;
  std::ostringstream msg;
  msg << "document does not match schema " << schema_name << ":";
  for (const auto& e : errs) msg << "\n  " << e;
  throw std::runtime_error(msg.str());
}

}  // namespace sumdim::io
