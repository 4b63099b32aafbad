// SPDX-License-Identifier: Apache-2.0
#include "pqobs/bench/evaluate.hpp"

namespace pqobs::bench {

using engine::MeasurementObject;

namespace {

std::string state_of(const json& node)
{
    if (node.is_object() && node.contains("state")) {
        return node["state"].get<std::string>();
    }
    return "";
}

bool field_matches(const json& expected, const json& actual)
{
    auto st = state_of(expected);
    if (st != state_of(actual)) {
        return false;
    }
    return st != "known" || expected.at("value") == actual.at("value");
}

// Returns an empty string on success, otherwise why the assertion failed.
std::string check(const Assertion& a, const json& object, const engine::PlaneClosure& closure,
                  const MeasurementObject& m)
{
    if (a.predicate == Predicate::plane_closed || a.predicate == Predicate::plane_open) {
        engine::Plane plane;
        try {
            plane = engine::plane_from_string(a.field_path);
        } catch (const std::exception&) {
            return "missing_path";
        }
        bool want = a.predicate == Predicate::plane_closed;
        return closure.is_closed(plane) == want ? "" : (want ? "plane open" : "plane closed");
    }
    const json* node = engine::lookup_path(object, a.field_path);
    if (node == nullptr) {
        return "missing_path";
    }
    auto st = state_of(*node);
    auto got = "got " + (st.empty() ? node->dump() : st);
    switch (a.predicate) {
    case Predicate::equals:
        if (st.empty()) {
            return *node == a.argument ? "" : got;
        }
        if (st != "known") {
            return got;
        }
        return node->at("value") == a.argument ? "" : "got value " + node->at("value").dump();
    case Predicate::is_unknown:
        return st == "unknown" ? "" : got;  // resolving an unsupported field is a failure
    case Predicate::is_not_applicable: {
        if (st != "not_applicable") {
            return got;
        }
        if (a.argument.is_null()) {
            return "";
        }
        for (const auto& r : node->value("reasons", json::array())) {
            if (r == a.argument) {
                return "";
            }
        }
        return "not_applicable without reason " + a.argument.dump();
    }
    case Predicate::is_ambiguous:
        return st == "ambiguous" ? "" : got;
    case Predicate::contradiction_flagged:
        for (const auto& r : m.observability.contradiction_records) {
            if (r.field == a.field_path) {
                return "";
            }
        }
        return "no contradiction record";
    case Predicate::capability_broader_true:
        return st == "known" && node->at("value") == true ? "" : got;
    case Predicate::plane_closed:
    case Predicate::plane_open:
        break;
    }
    return "unsupported predicate";
}

}  // namespace

ExactScore evaluate_exact(const MeasurementObject& result, const json& truth, const engine::ClosureRules& rules)
{
    ExactScore s;
    s.scenario_id = result.scenario_id;
    s.mode = result.mode;
    s.closure = engine::compute_plane_closure(result, rules);
    const json object = engine::to_json(result);
    for (const auto& [path, expected] : truth.items()) {
        FieldScore f;
        f.path = path;
        f.expected = expected;
        if (const json* node = engine::lookup_path(object, path)) {
            f.actual = *node;
            f.match = field_matches(expected, *node);
        }
        s.matched += f.match ? 1 : 0;
        s.fields.push_back(std::move(f));
    }
    return s;
}

ContractScore evaluate_contract(const MeasurementObject& result, const Contract& contract,
                                const engine::ClosureRules& rules)
{
    ContractScore s;
    s.scenario_id = result.scenario_id;
    s.mode = result.mode;
    const auto closure = engine::compute_plane_closure(result, rules);
    const json object = engine::to_json(result);
    for (const auto& a : contract.assertions) {
        if (!a.applies_to(result.mode)) {
            continue;
        }
        ++s.total;
        auto why = check(a, object, closure, result);
        if (why.empty()) {
            ++s.matched;
        } else {
            s.failures.push_back({a, false, why});
        }
    }
    return s;
}

json to_json(const ExactScore& s)
{
    json fields = json::array();
    for (const auto& f : s.fields) {
        fields.push_back({{"path", f.path}, {"expected", f.expected}, {"actual", f.actual}, {"match", f.match}});
    }
    return {{"scenario_id", s.scenario_id},
            {"mode", std::string(engine::to_string(s.mode))},
            {"matched", s.matched},
            {"total", s.fields.size()},
            {"fields", fields},
            {"closure", engine::to_json(s.closure)}};
}

json to_json(const ContractScore& s)
{
    json failures = json::array();
    for (const auto& f : s.failures) {
        failures.push_back({{"assertion", to_json(f.assertion)}, {"reason", f.reason}});
    }
    return {{"scenario_id", s.scenario_id},
            {"mode", std::string(engine::to_string(s.mode))},
            {"matched", s.matched},
            {"total", s.total},
            {"match", s.match()},
            {"failures", failures}};
}

}  // namespace pqobs::bench
