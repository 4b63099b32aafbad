// SPDX-License-Identifier: Apache-2.0
#include "pqobs/surfaces/capability.hpp"

#include <algorithm>
#include <set>

#include "pqobs/common/error.hpp"

namespace pqobs::surfaces {

namespace {

std::string endpoint_of(const Target& t)
{
    return t.host + ":" + std::to_string(t.port);
}

}  // namespace

CapabilitySummary aggregate_capability(std::vector<ProbeResult> results, const registry::Bundle& reg)
{
    CapabilitySummary s;
    if (results.empty()) {
        return s;
    }
    s.endpoint = endpoint_of(results.front().target);
    for (const auto& r : results) {
        if (endpoint_of(r.target) != s.endpoint) {
            throw Error("aggregation_error", "mixed targets: " + s.endpoint + " and " + endpoint_of(r.target));
        }
    }
    std::stable_sort(results.begin(), results.end(), [](const ProbeResult& a, const ProbeResult& b) {
        return std::tie(a.profile_id, a.timestamp) < std::tie(b.profile_id, b.timestamp);
    });
    std::set<std::string> profiles;
    std::set<std::string> groups;
    for (const auto& r : results) {
        profiles.insert(r.profile_id);
        ProfileOutcome po{r.profile_id, std::string(to_string(r.outcome.kind)), std::nullopt, r.timestamp};
        if (r.negotiated()) {
            s.decisive = true;
            if (r.outcome.group) {
                // Canonicalize again so alias spellings from older logs fold together.
                auto res = registry::canonicalize(reg, registry::Kind::named_group, registry::RawId(*r.outcome.group));
                std::string name = res.entry ? res.entry->canonical_name : *r.outcome.group;
                groups.insert(name);
                po.group = name;
            }
        } else if (r.outcome.kind == ProbeOutcome::Kind::handshake_failure) {
            s.decisive = true;
        }
        s.per_profile_outcomes.push_back(std::move(po));
    }
    s.probe_profiles.assign(profiles.begin(), profiles.end());
    s.confirmed_groups.assign(groups.begin(), groups.end());
    return s;
}

bool confirms_family(const CapabilitySummary& s, const registry::Bundle& reg, registry::Family family)
{
    return std::any_of(s.confirmed_groups.begin(), s.confirmed_groups.end(), [&](const std::string& g) {
        const auto* e = reg.find_name(registry::Kind::named_group, g);
        return e != nullptr && e->family == family;
    });
}

nlohmann::json to_json(const CapabilitySummary& s)
{
    nlohmann::json outcomes = nlohmann::json::array();
    for (const auto& o : s.per_profile_outcomes) {
        outcomes.push_back({{"profile_id", o.profile_id},
                            {"outcome", o.outcome},
                            {"group", o.group ? nlohmann::json(*o.group) : nlohmann::json(nullptr)},
                            {"timestamp", o.timestamp}});
    }
    return {{"endpoint", s.endpoint},
            {"probe_profiles", s.probe_profiles},
            {"confirmed_groups", s.confirmed_groups},
            {"per_profile_outcomes", outcomes},
            {"decisive", s.decisive}};
}

}  // namespace pqobs::surfaces
