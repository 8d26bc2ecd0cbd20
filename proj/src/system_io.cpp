#include "rifs/system_io.hpp"

#include <array>
#include <cmath>
#include <algorithm>
#include <string>

#include "rifs/errors.hpp"

namespace rifs {

namespace {

using nlohmann::json;

constexpr std::array kSystemFields{"lambda", "epsilon", "branches", "noise"};

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; });
    if (!known) throw ConfigurationError("unknown field '" + key + "' in " + where);
  }
}

double number_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigurationError("missing field '" + std::string(key) + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigurationError("field '" + std::string(key) + "' in " + where + " must be a number");
  return v.get<double>();
}

NoiseDensity noise_from_json(const json& doc, double epsilon) {
  if (!doc.is_object()) throw ConfigurationError("'noise' must be an object");
  reject_unknown(doc, {"family", "params"}, "noise");
  if (!doc.contains("family") || !doc.at("family").is_string()) {
    throw ConfigurationError("noise.family must be a string");
  }
  const NoiseFamily family = parse_noise_family(doc.at("family").get<std::string>());
  const json params = doc.value("params", json::object());
  if (!params.is_object()) throw ConfigurationError("noise.params must be an object");

  if (!(std::isfinite(epsilon) && epsilon >= 0.0)) {
    throw ConfigurationError("epsilon must be finite and >= 0");
  }
  try {
    switch (family) {
      case NoiseFamily::linear_ramp: {
        reject_unknown(params, {"slope"}, "noise.params");
        const double slope = params.contains("slope") ? number_field(params, "slope", "noise.params") : 1.0;
        return NoiseDensity::linear_ramp(epsilon, slope);
      }
      case NoiseFamily::uniform:
        reject_unknown(params, {}, "noise.params");
        return NoiseDensity::uniform(epsilon);
      case NoiseFamily::raised_cosine:
        reject_unknown(params, {}, "noise.params");
        return NoiseDensity::raised_cosine(epsilon);
      case NoiseFamily::quadratic_bump:
        reject_unknown(params, {}, "noise.params");
        return NoiseDensity::quadratic_bump(epsilon);
    }
  } catch (const DomainError& e) {
    throw ConfigurationError(e.what());
  }
  throw ConfigurationError("unhandled noise family");
}

}  // namespace

bool is_system_field(const std::string& key) {
  return std::any_of(kSystemFields.begin(), kSystemFields.end(), [&](const char* k) { return key == k; });
}

IfsSystem system_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigurationError("system description must be a JSON object");
  reject_unknown(doc, {"lambda", "epsilon", "branches", "noise"}, "system");

  IfsSystem sys;
  sys.lambda = number_field(doc, "lambda", "system");
  sys.epsilon = number_field(doc, "epsilon", "system");
  if (!doc.contains("branches") || !doc.at("branches").is_array()) {
    throw ConfigurationError("system.branches must be an array");
  }
  for (const json& br : doc.at("branches")) {
    if (!br.is_object()) throw ConfigurationError("each branch must be an object");
    reject_unknown(br, {"a", "b", "p"}, "branch");
    sys.branches.push_back(
        Branch{number_field(br, "a", "branch"), number_field(br, "b", "branch"), number_field(br, "p", "branch")});
  }
  if (!doc.contains("noise")) throw ConfigurationError("missing field 'noise' in system");
  sys.noise = noise_from_json(doc.at("noise"), sys.epsilon);
  return sys;
}

json system_to_json(const IfsSystem& sys) {
  json branches = json::array();
  for (const Branch& br : sys.branches) {
    branches.push_back({{"a", br.shift}, {"b", br.coupling}, {"p", br.probability}});
  }
  json params = json::object();
  if (sys.noise.family() == NoiseFamily::linear_ramp) params["slope"] = sys.noise.slope();
  return {{"lambda", sys.lambda},
          {"epsilon", sys.epsilon},
          {"branches", branches},
          {"noise", {{"family", std::string(to_string(sys.noise.family()))}, {"params", params}}}};
}

}  // namespace rifs
