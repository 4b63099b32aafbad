// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pqobs/registry/registry.hpp"
#include "pqobs/surfaces/probe.hpp"

namespace pqobs::campaign {

using nlohmann::json;

inline constexpr std::array<std::string_view, 10> operational_families = {
    "api_endpoints", "cdn_edges",          "cloud_vendors", "commerce",           "developer_documentation",
    "government",    "knowledge_communities", "media_news", "package_ecosystems", "universities"};

bool is_operational_family(std::string_view f);

struct TargetRecord {
    std::string target_id;
    std::string host;
    std::uint16_t port = 443;
    std::optional<std::string> sni;
    std::string family;
    std::string owner_scope;
    surfaces::Tier tier = surfaces::Tier::emulated;
    std::vector<std::string> profiles;
    std::string selection_source;
    std::string selection_basis;

    surfaces::Target target() const { return {host, port, sni, tier}; }
    bool operator==(const TargetRecord&) const = default;
};

json to_json(const TargetRecord& r);
TargetRecord target_record_from_json(const json& j);

// Inventory file: {"inventory_id": ..., "targets": [...]}, validated against
// the inventory schema.
struct Inventory {
    std::string inventory_id;
    std::vector<TargetRecord> targets;

    bool operator==(const Inventory&) const = default;
};

json to_json(const Inventory& inv);
Inventory inventory_from_json(const json& j);

struct Guardrails {
    std::map<std::string, surfaces::ProbeProfile> profiles;  // id -> profile
    bool require_sni_for_dns = true;
    bool forbid_client_auth_on_public = true;
};

// classical and hybrid campaign profiles (TLS 1.3 only).
Guardrails default_guardrails();

struct Violation {
    std::string target_id;
    std::string rule;  // missing_sni, client_auth_on_public, unknown_profile, ...
    std::string detail;

    bool operator==(const Violation&) const = default;
};

json to_json(const Violation& v);

struct ValidatedInventory {
    std::vector<TargetRecord> accepted;  // input order
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

// A record is accepted only when it breaks no rule. Violations are data,
// never exceptions.
ValidatedInventory validate_inventory(const std::vector<TargetRecord>& records, const Guardrails& g,
                                      const registry::Bundle& reg);

json to_json(const ValidatedInventory& v);

}  // namespace pqobs::campaign
