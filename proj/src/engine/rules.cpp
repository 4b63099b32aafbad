// SPDX-License-Identifier: Apache-2.0
#include "pqobs/engine/rules.hpp"

#include <algorithm>
#include <set>

#include "pqobs/common/error.hpp"
#include "pqobs/common/io.hpp"
#include "pqobs/common/schema.hpp"

namespace pqobs::engine {

using nlohmann::json;

namespace {

std::vector<surfaces::ChainSource> chain_sources(const json& arr)
{
    std::vector<surfaces::ChainSource> out;
    for (const auto& s : arr) {
        out.push_back(surfaces::chain_source_from_string(s.get<std::string>()));
    }
    return out;
}

}  // namespace

bool ModeInputs::accepts_chain(surfaces::ChainSource s) const
{
    auto has = [s](const auto& v) { return std::find(v.begin(), v.end(), s) != v.end(); };
    return has(value_chain_sources) || has(contradiction_chain_sources);
}

bool InferenceRules::enabled(std::string_view id, Mode m) const
{
    for (const auto& r : rules) {
        if (r.id == id) {
            return std::find(r.modes.begin(), r.modes.end(), m) != r.modes.end();
        }
    }
    throw Error("rules_error", "rule '" + std::string(id) + "' is not declared in " + version);
}

const ModeInputs& InferenceRules::for_mode(Mode m) const
{
    auto it = inputs.find(m);
    if (it == inputs.end()) {
        throw Error("rules_error", "no inputs declared for mode " + std::string(to_string(m)));
    }
    return it->second;
}

InferenceRules inference_rules_from_json(const json& j)
{
    validate_or_throw("inference_rules", j, "inference rules");
    InferenceRules r;
    r.version = j.at("rules_version").get<std::string>();
    r.short_lived_max_days = j.at("short_lived_max_days").get<std::int64_t>();
    for (const auto& [name, spec] : j.at("modes").items()) {
        ModeInputs in;
        in.accepts_active = spec.at("accepts_active").get<bool>();
        in.value_chain_sources = chain_sources(spec.at("value_chain_sources"));
        in.contradiction_chain_sources = chain_sources(spec.at("contradiction_chain_sources"));
        r.inputs[mode_from_string(name)] = std::move(in);
    }
    std::set<std::string> seen;
    for (const auto& rj : j.at("rules")) {
        RuleDef d;
        d.id = rj.at("id").get<std::string>();
        if (!seen.insert(d.id).second) {
            throw Error("rules_error", "duplicate rule id '" + d.id + "'");
        }
        d.plane = plane_from_string(rj.at("plane").get<std::string>());
        for (const auto& m : rj.at("modes")) {
            d.modes.push_back(mode_from_string(m.get<std::string>()));
        }
        d.description = rj.at("description").get<std::string>();
        r.rules.push_back(std::move(d));
    }
    for (auto m : all_modes) {
        r.for_mode(m);
    }
    return r;
}

InferenceRules load_inference_rules(const std::filesystem::path& path)
{
    return inference_rules_from_json(read_json_file(path));
}

const InferenceRules& default_inference_rules()
{
    static const InferenceRules rules = load_inference_rules(data_dir() / "rules" / "inference_v1.json");
    return rules;
}

ClosureRules closure_rules_from_json(const json& j)
{
    validate_or_throw("closure_rules", j, "closure rules");
    ClosureRules c;
    c.version = j.at("closure_version").get<std::string>();
    c.contradiction_blocks_closure = j.at("contradiction_blocks_closure").get<bool>();
    c.observability_requires_linkage = j.at("observability_requires_linkage").get<bool>();
    for (const auto& [name, paths] : j.at("required_fields").items()) {
        c.required_fields[plane_from_string(name)] = paths.get<std::vector<std::string>>();
    }
    for (auto p : all_planes) {
        if (!c.required_fields.count(p)) {
            throw Error("rules_error", "closure rules lack plane " + std::string(to_string(p)));
        }
    }
    return c;
}

ClosureRules load_closure_rules(const std::filesystem::path& path)
{
    return closure_rules_from_json(read_json_file(path));
}

const ClosureRules& default_closure_rules()
{
    static const ClosureRules rules = load_closure_rules(data_dir() / "rules" / "closure_v1.json");
    return rules;
}

}  // namespace pqobs::engine
