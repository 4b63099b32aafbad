// SPDX-License-Identifier: Apache-2.0
#include "pqobs/engine/policy.hpp"

#include <algorithm>

#include "pqobs/common/error.hpp"
#include "pqobs/common/io.hpp"
#include "pqobs/common/schema.hpp"

namespace pqobs::engine {

using nlohmann::json;

namespace {

PolicyCondition::Op op_from_string(const std::string& s)
{
    using Op = PolicyCondition::Op;
    static const std::pair<const char*, Op> ops[] = {
        {"equals", Op::equals},       {"not_equals", Op::not_equals},         {"in", Op::in},
        {"any_in_family", Op::any_in_family}, {"none_in_family", Op::none_in_family}, {"lte", Op::lte},
        {"gte", Op::gte},
    };
    for (const auto& [name, op] : ops) {
        if (s == name) {
            return op;
        }
    }
    throw Error("policy_load_error", "unknown condition op '" + s + "'");
}

// The value a condition looks at: the known value of an evidence object, or
// null for any other state.
json subject_value(const json& node)
{
    if (node.is_object() && node.contains("state")) {
        return node["state"] == "known" ? node.value("value", json()) : json();
    }
    return node;
}

bool family_match(const json& value, const std::string& family, const registry::Bundle& reg)
{
    auto check = [&](const json& v) {
        if (!v.is_string()) {
            return false;
        }
        const auto* e = reg.find_name(registry::Kind::named_group, v.get<std::string>());
        return e != nullptr && registry::to_string(e->family) == family;
    };
    if (value.is_array()) {
        return std::any_of(value.begin(), value.end(), check);
    }
    return check(value);
}

bool holds(const PolicyCondition& c, const json& object, const registry::Bundle& reg)
{
    using Op = PolicyCondition::Op;
    const json* node = lookup_path(object, c.path);
    json v = node ? subject_value(*node) : json();
    switch (c.op) {
    case Op::equals:
        return v == c.operand;
    case Op::not_equals:
        return v != c.operand;
    case Op::in:
        return std::find(c.operand.begin(), c.operand.end(), v) != c.operand.end();
    case Op::any_in_family:
        return family_match(v, c.operand.get<std::string>(), reg);
    case Op::none_in_family:
        return !v.is_null() && !family_match(v, c.operand.get<std::string>(), reg);
    case Op::lte:
        return v.is_number() && v <= c.operand;
    case Op::gte:
        return v.is_number() && v >= c.operand;
    }
    return false;
}

}  // namespace

Policy policy_from_json(const json& j)
{
    auto problems = schema_violations(bundled_schema("policy"), j);
    if (!problems.empty()) {
        throw Error("policy_load_error", problems.front());
    }
    Policy p;
    p.policy_id = j.at("policy_id").get<std::string>();
    for (const auto& cj : j.at("components")) {
        PolicyComponentRule r;
        r.id = cj.at("id").get<std::string>();
        r.requires_inputs = cj.at("requires").get<std::vector<std::string>>();
        for (const auto& kj : cj.at("cases")) {
            PolicyCase k;
            k.verdict = kj.at("verdict").get<std::string>();
            for (const auto& wj : kj.at("when")) {
                k.when.push_back({wj.at("path").get<std::string>(), op_from_string(wj.at("op").get<std::string>()),
                                  wj.value("operand", json())});
            }
            r.cases.push_back(std::move(k));
        }
        if (cj.contains("otherwise")) {
            r.otherwise = cj["otherwise"].get<std::string>();
        }
        p.components.push_back(std::move(r));
    }
    return p;
}

Policy load_policy(const std::filesystem::path& path)
{
    json j;
    try {
        j = read_json_file(path);
    } catch (const std::exception& e) {
        throw Error("policy_load_error", e.what());
    }
    return policy_from_json(j);
}

const Policy& default_policy()
{
    static const Policy p = load_policy(data_dir() / "policy" / "default_v1.json");
    return p;
}

MeasurementObject apply_policy_profile(const MeasurementObject& m, const Policy& policy, const registry::Bundle& reg)
{
    MeasurementObject out = m;
    out.policy.reset();
    const json object = to_json(out);
    PolicyProjection proj;
    proj.policy_id = policy.policy_id;
    for (const auto& rule : policy.components) {
        VerdictComponent vc;
        vc.id = rule.id;
        for (const auto& path : rule.requires_inputs) {
            const json* node = lookup_path(object, path);
            vc.consumed[path] = node ? *node : json();
            if (!vc.withheld && (node == nullptr || !path_resolved(*node))) {
                vc.withheld = true;
                vc.reason = "unresolved_input: " + path;
            }
        }
        if (!vc.withheld) {
            for (const auto& k : rule.cases) {
                if (std::all_of(k.when.begin(), k.when.end(), [&](const auto& c) { return holds(c, object, reg); })) {
                    vc.verdict = k.verdict;
                    vc.reason = "matched_case";
                    break;
                }
            }
            if (!vc.verdict && rule.otherwise) {
                vc.verdict = rule.otherwise;
                vc.reason = "otherwise";
            }
            if (!vc.verdict) {
                vc.withheld = true;
                vc.reason = "no_matching_case";
            }
        }
        proj.components.push_back(std::move(vc));
    }
    out.policy = std::move(proj);
    return out;
}

}  // namespace pqobs::engine
