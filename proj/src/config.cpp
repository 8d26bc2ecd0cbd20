#include "rifs/config.hpp"

#include <fstream>

#include "rifs/errors.hpp"
#include "rifs/system_io.hpp"

namespace rifs {

namespace {

using nlohmann::json;

bool is_run_field(const std::string& key) {
  for (const char* k : {"grid_points", "t_nodes", "cell_nodes", "tol", "max_iter", "seed", "cone"}) {
    if (key == k) return true;
  }
  return false;
}

template <typename T>
T integer_field(const json& v, const char* key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigurationError(std::string("'") + key + "' must be a non-negative integer");
  }
  return static_cast<T>(v.get<unsigned long long>());
}

}  // namespace

RunConfig run_config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigurationError("config must be a JSON object");
  RunConfig cfg;
  json system_doc = json::object();
  bool nested = false;
  for (const auto& [key, value] : doc.items()) {
    if (key == "system") {
      nested = true;
      system_doc = value;
    } else if (is_system_field(key)) {
      system_doc[key] = value;
    } else if (!is_run_field(key)) {
      throw ConfigurationError("unknown config field '" + key + "'");
    }
  }
  if (nested && doc.contains("lambda")) {
    throw ConfigurationError("config mixes a nested 'system' object with top-level system fields");
  }
  cfg.system = system_from_json(system_doc);

  if (doc.contains("grid_points")) cfg.grid_points = integer_field<std::size_t>(doc.at("grid_points"), "grid_points");
  if (doc.contains("t_nodes")) cfg.t_nodes = integer_field<int>(doc.at("t_nodes"), "t_nodes");
  if (doc.contains("cell_nodes")) cfg.cell_nodes = integer_field<int>(doc.at("cell_nodes"), "cell_nodes");
  if (doc.contains("max_iter")) cfg.max_iter = integer_field<int>(doc.at("max_iter"), "max_iter");
  if (doc.contains("seed")) cfg.seed = integer_field<std::uint64_t>(doc.at("seed"), "seed");
  if (doc.contains("tol")) {
    if (!doc.at("tol").is_number() || !(doc.at("tol").get<double>() > 0.0)) {
      throw ConfigurationError("'tol' must be a positive number");
    }
    cfg.tol = doc.at("tol").get<double>();
  }
  if (doc.contains("cone")) {
    const json& c = doc.at("cone");
    if (!c.is_object()) throw ConfigurationError("'cone' must be an object");
    ConeParams cone;
    for (const auto& [key, value] : c.items()) {
      if (!value.is_number()) throw ConfigurationError("cone." + key + " must be a number");
      if (key == "a") {
        cone.a = value.get<double>();
      } else if (key == "gamma") {
        cone.gamma = value.get<double>();
      } else if (key == "b") {
        cone.b = value.get<double>();
      } else {
        throw ConfigurationError("unknown field '" + key + "' in cone");
      }
    }
    cfg.cone = cone;
  }
  if (cfg.grid_points < 3 || cfg.grid_points % 2 == 0) {
    throw ConfigurationError("grid_points must be odd and >= 3");
  }
  if (cfg.t_nodes < 2) throw ConfigurationError("t_nodes must be >= 2");
  if (cfg.cell_nodes < 0) throw ConfigurationError("cell_nodes must be >= 0");
  if (cfg.max_iter < 1) throw ConfigurationError("max_iter must be >= 1");
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigurationError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return run_config_from_json(doc);
}

}  // namespace rifs
