// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqobs/engine/measurement.hpp"
#include "pqobs/registry/registry.hpp"

namespace pqobs::engine {

struct PolicyCondition {
    enum class Op { equals, not_equals, in, any_in_family, none_in_family, lte, gte };
    std::string path;
    Op op = Op::equals;
    nlohmann::json operand;
};

struct PolicyCase {
    std::vector<PolicyCondition> when;  // all must hold
    std::string verdict;
};

struct PolicyComponentRule {
    std::string id;
    std::vector<std::string> requires_inputs;
    std::vector<PolicyCase> cases;  // first match wins
    std::optional<std::string> otherwise;
};

struct Policy {
    std::string policy_id;
    std::vector<PolicyComponentRule> components;
};

// Throws pqobs::Error(policy_load_error) for a malformed rule file.
Policy policy_from_json(const nlohmann::json& j);
Policy load_policy(const std::filesystem::path& path);
const Policy& default_policy();  // data/policy/default_v1.json

// Returns a copy of m with the policy projection set. A component whose
// required inputs are not all known or justified not_applicable is withheld
// with the first unresolved path as its reason. Every other plane is left
// untouched.
MeasurementObject apply_policy_profile(const MeasurementObject& m, const Policy& policy, const registry::Bundle& reg);

}  // namespace pqobs::engine
