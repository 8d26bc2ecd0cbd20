#pragma once

#include <json.hpp>

#include "rifs/system.hpp"

namespace rifs {

// {"lambda", "epsilon", "branches": [{"a", "b", "p"}], "noise": {"family", "params"}}.
// Unknown fields are rejected with ConfigurationError. The result is not
// validated; run validate_system on it.
IfsSystem system_from_json(const nlohmann::json& doc);
nlohmann::json system_to_json(const IfsSystem& sys);

// Field names recognised by system_from_json at the top level of a document.
bool is_system_field(const std::string& key);

}  // namespace rifs
