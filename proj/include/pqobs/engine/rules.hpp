// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pqobs/engine/measurement.hpp"
#include "pqobs/surfaces/types.hpp"

namespace pqobs::engine {

struct RuleDef {
    std::string id;
    Plane plane = Plane::session_core;
    std::vector<Mode> modes;
    std::string description;
};

struct ModeInputs {
    bool accepts_active = false;
    // Chains that may fill authentication/lifecycle, highest priority first.
    std::vector<surfaces::ChainSource> value_chain_sources;
    // Chains that may only take part in contradiction detection.
    std::vector<surfaces::ChainSource> contradiction_chain_sources;

    bool accepts_chain(surfaces::ChainSource s) const;
};

struct InferenceRules {
    std::string version;
    std::int64_t short_lived_max_days = 90;
    std::map<Mode, ModeInputs> inputs;
    std::vector<RuleDef> rules;

    // True when rule `id` is declared and lists `m`. Throws
    // pqobs::Error(rules_error) for an undeclared id, so the engine cannot
    // drift from the rule file silently.
    bool enabled(std::string_view id, Mode m) const;
    const ModeInputs& for_mode(Mode m) const;
};

InferenceRules inference_rules_from_json(const nlohmann::json& j);
InferenceRules load_inference_rules(const std::filesystem::path& path);
const InferenceRules& default_inference_rules();  // data/rules/inference_v1.json

struct ClosureRules {
    std::string version;
    std::map<Plane, std::vector<std::string>> required_fields;  // dotted measurement paths
    bool contradiction_blocks_closure = false;
    // Observability additionally needs a plane_linkage entry for every plane
    // holding a known value.
    bool observability_requires_linkage = true;
};

ClosureRules closure_rules_from_json(const nlohmann::json& j);
ClosureRules load_closure_rules(const std::filesystem::path& path);
const ClosureRules& default_closure_rules();  // data/rules/closure_v1.json

}  // namespace pqobs::engine
