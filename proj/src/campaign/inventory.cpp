// SPDX-License-Identifier: Apache-2.0
#include "pqobs/campaign/inventory.hpp"

#include <algorithm>
#include <set>

#include "pqobs/common/error.hpp"
#include "pqobs/common/schema.hpp"

namespace pqobs::campaign {

bool is_operational_family(std::string_view f)
{
    return std::find(operational_families.begin(), operational_families.end(), f) != operational_families.end();
}

json to_json(const TargetRecord& r)
{
    return {{"target_id", r.target_id},
            {"host", r.host},
            {"port", r.port},
            {"sni", r.sni ? json(*r.sni) : json(nullptr)},
            {"family", r.family},
            {"owner_scope", r.owner_scope},
            {"tier", std::string(surfaces::to_string(r.tier))},
            {"profiles", r.profiles},
            {"selection_source", r.selection_source},
            {"selection_basis", r.selection_basis}};
}

TargetRecord target_record_from_json(const json& j)
{
    TargetRecord r;
    r.target_id = j.at("target_id").get<std::string>();
    r.host = j.at("host").get<std::string>();
    r.port = j.value("port", std::uint16_t{443});
    if (j.contains("sni") && !j["sni"].is_null()) {
        r.sni = j["sni"].get<std::string>();
    }
    r.family = j.at("family").get<std::string>();
    r.owner_scope = j.value("owner_scope", "");
    r.tier = surfaces::tier_from_string(j.at("tier").get<std::string>());
    r.profiles = j.at("profiles").get<std::vector<std::string>>();
    r.selection_source = j.value("selection_source", "");
    r.selection_basis = j.value("selection_basis", "");
    return r;
}

json to_json(const Inventory& inv)
{
    json targets = json::array();
    for (const auto& t : inv.targets) {
        targets.push_back(to_json(t));
    }
    return {{"inventory_id", inv.inventory_id}, {"targets", targets}};
}

Inventory inventory_from_json(const json& j)
{
    validate_or_throw("inventory", j, "inventory");
    Inventory inv;
    inv.inventory_id = j.at("inventory_id").get<std::string>();
    for (const auto& t : j.at("targets")) {
        inv.targets.push_back(target_record_from_json(t));
    }
    return inv;
}

Guardrails default_guardrails()
{
    Guardrails g;
    for (auto p : {surfaces::classical_profile(), surfaces::hybrid_profile()}) {
        g.profiles.emplace(p.profile_id, p);
    }
    return g;
}

json to_json(const Violation& v)
{
    return {{"target_id", v.target_id}, {"rule", v.rule}, {"detail", v.detail}};
}

ValidatedInventory validate_inventory(const std::vector<TargetRecord>& records, const Guardrails& g,
                                      const registry::Bundle& reg)
{
    ValidatedInventory out;
    std::set<std::string> seen;
    for (const auto& r : records) {
        std::vector<Violation> v;
        auto add = [&](std::string rule, std::string detail) { v.push_back({r.target_id, std::move(rule), std::move(detail)}); };

        if (r.target_id.empty()) {
            add("missing_target_id", "record for host " + r.host);
        } else if (!seen.insert(r.target_id).second) {
            add("duplicate_target_id", r.target_id);
        }
        if (r.host.empty()) {
            add("missing_host", "");
        }
        if (r.port == 0) {
            add("invalid_port", "port 0");
        }
        if (!is_operational_family(r.family)) {
            add("unknown_family", r.family);
        }
        if (g.require_sni_for_dns && !r.host.empty() && !surfaces::is_ip_literal(r.host) &&
            (!r.sni || r.sni->empty())) {
            add("missing_sni", "DNS hostname " + r.host + " has no SNI");
        }
        if (r.profiles.empty()) {
            add("no_profiles", "");
        }
        for (const auto& pid : r.profiles) {
            auto it = g.profiles.find(pid);
            if (it == g.profiles.end()) {
                add("unknown_profile", pid);
                continue;
            }
            if (g.forbid_client_auth_on_public && r.tier == surfaces::Tier::public_blind &&
                it->second.client_auth_enabled) {
                add("client_auth_on_public", "profile " + pid + " enables client auth");
            }
            try {
                surfaces::validate_profile(it->second, reg);
            } catch (const Error& e) {
                add("invalid_profile", e.what());
            }
        }
        if (v.empty()) {
            out.accepted.push_back(r);
        } else {
            out.violations.insert(out.violations.end(), v.begin(), v.end());
        }
    }
    return out;
}

json to_json(const ValidatedInventory& v)
{
    json accepted = json::array();
    for (const auto& r : v.accepted) {
        accepted.push_back(r.target_id);
    }
    json violations = json::array();
    for (const auto& x : v.violations) {
        violations.push_back(to_json(x));
    }
    return {{"accepted", accepted}, {"violations", violations}};
}

}  // namespace pqobs::campaign
