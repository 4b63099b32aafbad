// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pqobs {

using json = nlohmann::json;

enum class EvidenceState { known, unknown, ambiguous, not_applicable };

std::string_view to_string(EvidenceState s);
EvidenceState evidence_state_from_string(std::string_view s);

// A field value together with how much the evidence actually supports it.
// value is set only for known, candidates only for ambiguous, and
// not_applicable always names at least one justification reason.
struct EvidenceValue {
    EvidenceState state = EvidenceState::unknown;
    json value;
    std::vector<json> candidates;
    std::vector<std::string> reasons;

    static EvidenceValue known(json v, std::vector<std::string> reasons = {});
    static EvidenceValue unknown(std::string reason);
    static EvidenceValue ambiguous(std::vector<json> candidates, std::string reason);
    static EvidenceValue not_applicable(std::string reason);

    bool is_known() const { return state == EvidenceState::known; }
    bool is_not_applicable() const { return state == EvidenceState::not_applicable; }
    // known or justified not_applicable
    bool resolved() const { return is_known() || (is_not_applicable() && !reasons.empty()); }
    bool has_reason(std::string_view r) const;

    bool operator==(const EvidenceValue&) const = default;
};

void to_json(json& j, const EvidenceValue& ev);
// Throws pqobs::Error(schema_violation) when the state invariants do not hold.
void from_json(const json& j, EvidenceValue& ev);

}  // namespace pqobs
