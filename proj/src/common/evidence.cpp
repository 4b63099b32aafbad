// SPDX-License-Identifier: Apache-2.0
#include "pqobs/common/evidence.hpp"

#include <algorithm>

#include "pqobs/common/error.hpp"

namespace pqobs {

std::string_view to_string(EvidenceState s)
{
    switch (s) {
    case EvidenceState::known:
        return "known";
    case EvidenceState::unknown:
        return "unknown";
    case EvidenceState::ambiguous:
        return "ambiguous";
    case EvidenceState::not_applicable:
        return "not_applicable";
    }
    return "unknown";
}

EvidenceState evidence_state_from_string(std::string_view s)
{
    if (s == "known") {
        return EvidenceState::known;
    }
    if (s == "unknown") {
        return EvidenceState::unknown;
    }
    if (s == "ambiguous") {
        return EvidenceState::ambiguous;
    }
    if (s == "not_applicable") {
        return EvidenceState::not_applicable;
    }
    throw Error("schema_violation", "unrecognized evidence state '" + std::string(s) + "'");
}

EvidenceValue EvidenceValue::known(json v, std::vector<std::string> reasons)
{
    EvidenceValue ev;
    ev.state = EvidenceState::known;
    ev.value = std::move(v);
    ev.reasons = std::move(reasons);
    return ev;
}

EvidenceValue EvidenceValue::unknown(std::string reason)
{
    EvidenceValue ev;
    ev.state = EvidenceState::unknown;
    ev.reasons.push_back(std::move(reason));
    return ev;
}

EvidenceValue EvidenceValue::ambiguous(std::vector<json> candidates, std::string reason)
{
    EvidenceValue ev;
    ev.state = EvidenceState::ambiguous;
    ev.candidates = std::move(candidates);
    ev.reasons.push_back(std::move(reason));
    return ev;
}

EvidenceValue EvidenceValue::not_applicable(std::string reason)
{
    EvidenceValue ev;
    ev.state = EvidenceState::not_applicable;
    ev.reasons.push_back(std::move(reason));
    return ev;
}

bool EvidenceValue::has_reason(std::string_view r) const
{
    return std::find(reasons.begin(), reasons.end(), r) != reasons.end();
}

void to_json(json& j, const EvidenceValue& ev)
{
    j = json::object();
    j["state"] = std::string(to_string(ev.state));
    if (ev.state == EvidenceState::known) {
        j["value"] = ev.value;
    }
    if (ev.state == EvidenceState::ambiguous) {
        j["candidates"] = ev.candidates;
    }
    j["reasons"] = ev.reasons;
}

void from_json(const json& j, EvidenceValue& ev)
{
    if (!j.is_object() || !j.contains("state") || !j["state"].is_string()) {
        throw Error("schema_violation", "evidence value must be an object with a state");
    }
    ev = EvidenceValue{};
    ev.state = evidence_state_from_string(j["state"].get<std::string>());
    if (j.contains("reasons")) {
        ev.reasons = j["reasons"].get<std::vector<std::string>>();
    }
    bool has_value = j.contains("value");
    bool has_candidates = j.contains("candidates");
    if (has_value != (ev.state == EvidenceState::known)) {
        throw Error("schema_violation", "evidence value present iff state is known");
    }
    if (has_candidates != (ev.state == EvidenceState::ambiguous)) {
        throw Error("schema_violation", "candidates present iff state is ambiguous");
    }
    if (ev.state == EvidenceState::not_applicable && ev.reasons.empty()) {
        throw Error("schema_violation", "not_applicable requires a reason");
    }
    if (has_value) {
        ev.value = j["value"];
    }
    if (has_candidates) {
        ev.candidates = j["candidates"].get<std::vector<json>>();
        if (ev.candidates.size() < 2) {
            throw Error("schema_violation", "ambiguous needs at least two candidates");
        }
    }
}

}  // namespace pqobs
