#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "rifs/cones.hpp"
#include "rifs/system.hpp"

namespace rifs {

struct RunConfig {
  IfsSystem system;
  std::size_t grid_points = 4001;
  int t_nodes = 32;
  int cell_nodes = 3;  // 0 selects the plain t_nodes Gauss-Legendre rule
  double tol = 1e-10;
  int max_iter = 500;
  std::uint64_t seed = 0;
  std::optional<ConeParams> cone;
};

/// Accepts either the system fields at the top level next to the run fields,
/// or a nested "system" object. Unknown keys are rejected.
RunConfig run_config_from_json(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

}  // namespace rifs
