// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pqobs/registry/registry.hpp"
#include "pqobs/surfaces/probe.hpp"

namespace pqobs::surfaces {

struct ProfileOutcome {
    std::string profile_id;
    std::string outcome;                // negotiated / handshake_failure / timeout / transport_error
    std::optional<std::string> group;   // negotiated group, if any
    double timestamp = 0.0;

    bool operator==(const ProfileOutcome&) const = default;
};

// Lower-bound view of what an endpoint was seen to negotiate. Groups that
// were never negotiated are simply absent; nothing is marked unsupported.
struct CapabilitySummary {
    std::string endpoint;  // host:port, empty for an empty input
    std::vector<std::string> probe_profiles;
    std::vector<std::string> confirmed_groups;  // sorted
    std::vector<ProfileOutcome> per_profile_outcomes;
    // At least one probe got a decisive answer (negotiated or refused).
    bool decisive = false;

    bool operator==(const CapabilitySummary&) const = default;
};

// Sorts by (profile_id, timestamp) before folding, so the result does not
// depend on input order. Throws pqobs::Error(aggregation_error) when the
// results name different endpoints.
CapabilitySummary aggregate_capability(std::vector<ProbeResult> results, const registry::Bundle& reg);

// True when some confirmed group has the given registry family.
bool confirms_family(const CapabilitySummary& s, const registry::Bundle& reg, registry::Family family);

nlohmann::json to_json(const CapabilitySummary& s);

}  // namespace pqobs::surfaces
