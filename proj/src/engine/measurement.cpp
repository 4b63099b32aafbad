// SPDX-License-Identifier: Apache-2.0
#include "pqobs/engine/measurement.hpp"

#include <cctype>

#include "pqobs/common/error.hpp"
#include "pqobs/common/schema.hpp"

namespace pqobs::engine {

namespace {

constexpr std::array<std::pair<Mode, std::string_view>, 3> mode_names = {{
    {Mode::B1_passive_only, "B1_passive_only"},
    {Mode::B2_passive_active, "B2_passive_active"},
    {Mode::B3_multi_surface, "B3_multi_surface"},
}};

constexpr std::array<std::string_view, 7> plane_names = {"session_core",   "session_hidden_detail",
                                                        "capability",     "key_establishment",
                                                        "authentication", "lifecycle",
                                                        "observability"};

constexpr std::array<std::string_view, 7> plane_keys = {"session_profile",        "session_profile",
                                                       "capability_profile",     "key_establishment_profile",
                                                       "authentication_profile", "lifecycle_profile",
                                                       "observability_profile"};

json sourced_json(const SourcedValue& v)
{
    return {{"value", v.value}, {"source", v.source}, {"timestamp", v.timestamp}};
}

SourcedValue sourced_from(const json& j)
{
    return {j.at("value"), j.at("source").get<std::string>(), j.at("timestamp").get<double>()};
}

json planes_json(const MeasurementObject& m)
{
    json j;
    const auto& s = m.session;
    j["session_profile"] = {{"negotiated_tls_version", s.negotiated_version},
                            {"selected_group", s.selected_group},
                            {"cipher_suite", s.cipher_suite},
                            {"hrr_seen", s.hrr_seen},
                            {"completeness_status", s.completeness},
                            {"mtls_seen", s.mtls_seen},
                            {"fresh_authentication", s.fresh_authentication}};
    j["key_establishment_profile"] = {{"profile", m.key_establishment.profile},
                                      {"components", m.key_establishment.components},
                                      {"applicability_state", m.key_establishment.applicability_state}};
    j["capability_profile"] = {{"probe_profiles", m.capability.probe_profiles},
                               {"supported_groups_lower_bound", m.capability.supported_groups_lower_bound},
                               {"capability_broader_than_session", m.capability.capability_broader_than_session}};
    j["authentication_profile"] = {{"leaf_spki_algorithm", m.authentication.leaf_spki_algorithm},
                                   {"leaf_signature_algorithm", m.authentication.leaf_signature_algorithm},
                                   {"chain_depth", m.authentication.chain_depth},
                                   {"chain_source_type", m.authentication.chain_source_type}};
    j["lifecycle_profile"] = {{"validity_days", m.lifecycle.validity_days},
                              {"short_lived_bucket", m.lifecycle.short_lived_bucket}};
    json records = json::array();
    for (const auto& r : m.observability.contradiction_records) {
        records.push_back({{"field", r.field}, {"a", sourced_json(r.a)}, {"b", sourced_json(r.b)}});
    }
    j["observability_profile"] = {{"surface_origins", m.observability.surface_origins},
                                  {"plane_linkage", m.observability.plane_linkage},
                                  {"contradiction_flag", m.observability.contradiction_flag()},
                                  {"contradiction_records", records},
                                  {"ambiguity_reasons", m.observability.ambiguity_reasons}};
    return j;
}

}  // namespace

std::string_view to_string(Mode m)
{
    for (const auto& [mode, name] : mode_names) {
        if (mode == m) {
            return name;
        }
    }
    return "B1_passive_only";
}

std::string_view short_name(Mode m)
{
    return to_string(m).substr(0, 2);
}

Mode mode_from_string(std::string_view s)
{
    for (const auto& [mode, name] : mode_names) {
        auto shortn = name.substr(0, 2);
        if (s == name || s == shortn || (s.size() == 2 && std::toupper(s[0]) == shortn[0] && s[1] == shortn[1])) {
            return mode;
        }
    }
    throw Error("invalid_mode", "unknown mode '" + std::string(s) + "'");
}

std::string_view to_string(Plane p)
{
    return plane_names[static_cast<std::size_t>(p)];
}

Plane plane_from_string(std::string_view s)
{
    for (std::size_t i = 0; i < plane_names.size(); ++i) {
        if (plane_names[i] == s) {
            return static_cast<Plane>(i);
        }
    }
    throw Error("invalid_plane", "unknown plane '" + std::string(s) + "'");
}

std::string_view plane_object_key(Plane p)
{
    return plane_keys[static_cast<std::size_t>(p)];
}

json to_json(const MeasurementObject& m)
{
    json j = planes_json(m);
    j["scenario_id"] = m.scenario_id;
    j["mode"] = std::string(to_string(m.mode));
    j["inference_trace"] = m.inference_trace;
    if (m.policy) {
        json comps = json::array();
        for (const auto& c : m.policy->components) {
            json cj = {{"id", c.id}, {"withheld", c.withheld}, {"reason", c.reason}, {"consumed", c.consumed}};
            cj["verdict"] = c.verdict ? json(*c.verdict) : json(nullptr);
            comps.push_back(cj);
        }
        j["policy_projection"] = {{"policy_id", m.policy->policy_id}, {"components", comps}};
    } else {
        j["policy_projection"] = nullptr;
    }
    return j;
}

MeasurementObject measurement_from_json(const json& j)
{
    validate_or_throw("measurement_object", j, "measurement object");
    MeasurementObject m;
    m.scenario_id = j.at("scenario_id").get<std::string>();
    m.mode = mode_from_string(j.at("mode").get<std::string>());
    const auto& s = j.at("session_profile");
    m.session.negotiated_version = s.at("negotiated_tls_version").get<EvidenceValue>();
    m.session.selected_group = s.at("selected_group").get<EvidenceValue>();
    m.session.cipher_suite = s.at("cipher_suite").get<EvidenceValue>();
    m.session.hrr_seen = s.at("hrr_seen").get<EvidenceValue>();
    m.session.completeness = s.at("completeness_status").get<EvidenceValue>();
    m.session.mtls_seen = s.at("mtls_seen").get<EvidenceValue>();
    m.session.fresh_authentication = s.at("fresh_authentication").get<EvidenceValue>();
    const auto& k = j.at("key_establishment_profile");
    m.key_establishment.profile = k.at("profile").get<EvidenceValue>();
    m.key_establishment.components = k.at("components").get<std::vector<std::string>>();
    m.key_establishment.applicability_state = k.at("applicability_state").get<std::string>();
    const auto& c = j.at("capability_profile");
    m.capability.probe_profiles = c.at("probe_profiles").get<std::vector<std::string>>();
    m.capability.supported_groups_lower_bound = c.at("supported_groups_lower_bound").get<EvidenceValue>();
    m.capability.capability_broader_than_session = c.at("capability_broader_than_session").get<EvidenceValue>();
    const auto& a = j.at("authentication_profile");
    m.authentication.leaf_spki_algorithm = a.at("leaf_spki_algorithm").get<EvidenceValue>();
    m.authentication.leaf_signature_algorithm = a.at("leaf_signature_algorithm").get<EvidenceValue>();
    m.authentication.chain_depth = a.at("chain_depth").get<EvidenceValue>();
    m.authentication.chain_source_type = a.at("chain_source_type").get<EvidenceValue>();
    const auto& l = j.at("lifecycle_profile");
    m.lifecycle.validity_days = l.at("validity_days").get<EvidenceValue>();
    m.lifecycle.short_lived_bucket = l.at("short_lived_bucket").get<EvidenceValue>();
    const auto& o = j.at("observability_profile");
    m.observability.surface_origins = o.at("surface_origins").get<std::vector<std::string>>();
    m.observability.plane_linkage = o.at("plane_linkage").get<std::map<std::string, std::string>>();
    for (const auto& r : o.at("contradiction_records")) {
        m.observability.contradiction_records.push_back(
            {r.at("field").get<std::string>(), sourced_from(r.at("a")), sourced_from(r.at("b"))});
    }
    m.observability.ambiguity_reasons = o.at("ambiguity_reasons").get<std::vector<std::string>>();
    if (o.at("contradiction_flag").get<bool>() != m.observability.contradiction_flag()) {
        throw Error("schema_violation", "contradiction_flag disagrees with contradiction_records");
    }
    m.inference_trace = j.at("inference_trace").get<std::vector<std::string>>();
    if (!j.at("policy_projection").is_null()) {
        PolicyProjection p;
        p.policy_id = j["policy_projection"].at("policy_id").get<std::string>();
        for (const auto& cj : j["policy_projection"].at("components")) {
            VerdictComponent vc;
            vc.id = cj.at("id").get<std::string>();
            if (!cj.at("verdict").is_null()) {
                vc.verdict = cj["verdict"].get<std::string>();
            }
            vc.withheld = cj.at("withheld").get<bool>();
            vc.reason = cj.at("reason").get<std::string>();
            vc.consumed = cj.at("consumed").get<std::map<std::string, json>>();
            p.components.push_back(std::move(vc));
        }
        m.policy = std::move(p);
    }
    return m;
}

std::string planes_fingerprint(const MeasurementObject& m)
{
    return planes_json(m).dump();
}

const json* lookup_path(const json& object, std::string_view dotted_path)
{
    const json* node = &object;
    std::size_t start = 0;
    while (start <= dotted_path.size()) {
        auto end = dotted_path.find('.', start);
        auto seg = std::string(dotted_path.substr(start, end == std::string_view::npos ? end : end - start));
        if (!node->is_object() || !node->contains(seg)) {
            return nullptr;
        }
        node = &(*node)[seg];
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }
    return node;
}

bool path_resolved(const json& node)
{
    if (node.is_object() && node.contains("state")) {
        auto st = node["state"].get<std::string>();
        return st == "known" || (st == "not_applicable" && !node.value("reasons", json::array()).empty());
    }
    if (node.is_array() || node.is_object()) {
        return !node.empty();
    }
    return !node.is_null();
}

}  // namespace pqobs::engine
