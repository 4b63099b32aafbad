// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pqobs {

using json = nlohmann::json;

// Validator for the JSON Schema subset used by the bundled schemas: type,
// enum, const, required, properties, additionalProperties, items,
// minItems/maxItems, uniqueItems, minimum/maximum, minLength, pattern, anyOf
// and local "#/$defs/..." references. Returns one message per violation, each
// prefixed with the JSON pointer of the offending instance.
std::vector<std::string> schema_violations(const json& schema, const json& instance);

// Looks up a bundled schema by name ("registry", "transcript", ...).
const json& bundled_schema(std::string_view name);
std::vector<std::string> bundled_schema_names();

// Throws pqobs::Error(schema_violation) listing the first few violations.
void validate_or_throw(std::string_view schema_name, const json& instance, std::string_view what);

}  // namespace pqobs
