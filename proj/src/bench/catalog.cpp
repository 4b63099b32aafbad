// SPDX-License-Identifier: Apache-2.0
#include "pqobs/bench/catalog.hpp"

#include <algorithm>
#include <array>

#include "pqobs/common/error.hpp"

namespace pqobs::bench {

using surfaces::ChainSource;
using surfaces::Linkage;
using engine::Mode;

namespace {

constexpr std::array<std::pair<Predicate, std::string_view>, 8> predicate_names = {{
    {Predicate::equals, "equals"},
    {Predicate::is_unknown, "is_unknown"},
    {Predicate::is_not_applicable, "is_not_applicable"},
    {Predicate::is_ambiguous, "is_ambiguous"},
    {Predicate::contradiction_flagged, "contradiction_flagged"},
    {Predicate::capability_broader_true, "capability_broader_true"},
    {Predicate::plane_closed, "plane_closed"},
    {Predicate::plane_open, "plane_open"},
}};

json optional_json(const std::optional<std::string>& v)
{
    return v ? json(*v) : json(nullptr);
}

std::optional<std::string> optional_string(const json& j, const char* key)
{
    if (!j.contains(key) || j[key].is_null()) {
        return std::nullopt;
    }
    return j[key].get<std::string>();
}

json to_json(const SessionSpec& s)
{
    json muts = json::array();
    for (const auto& m : s.mutations) {
        muts.push_back(wire::to_json(m));
    }
    json j = {{"tls_version", s.tls_version},
              {"offered_groups", s.offered_groups},
              {"key_share_groups", s.key_share_groups},
              {"cipher_suite", s.cipher_suite},
              {"selected_group", optional_json(s.selected_group)},
              {"hrr_group", optional_json(s.hrr_group)},
              {"hrr_second_leg", s.hrr_second_leg},
              {"psk", s.psk},
              {"mtls", s.mtls},
              {"server_chain", s.server_chain},
              {"client_chain", s.client_chain},
              {"mutations", muts}};
    if (s.truncation) {
        j["truncation"] = {{"kind", wire::to_json(wire::TruncationCut{s.truncation->kind, 0}).at("kind")},
                           {"bytes_after_serverhello", s.truncation->bytes_after_serverhello}};
    } else {
        j["truncation"] = nullptr;
    }
    return j;
}

SessionSpec session_from_json(const json& j)
{
    SessionSpec s;
    s.tls_version = j.at("tls_version").get<std::string>();
    s.offered_groups = j.at("offered_groups").get<std::vector<std::string>>();
    s.key_share_groups = j.at("key_share_groups").get<std::vector<std::string>>();
    s.cipher_suite = j.at("cipher_suite").get<std::string>();
    s.selected_group = optional_string(j, "selected_group");
    s.hrr_group = optional_string(j, "hrr_group");
    s.hrr_second_leg = j.at("hrr_second_leg").get<bool>();
    s.psk = j.at("psk").get<std::string>();
    s.mtls = j.at("mtls").get<bool>();
    s.server_chain = j.at("server_chain").get<std::vector<std::string>>();
    s.client_chain = j.at("client_chain").get<std::vector<std::string>>();
    for (const auto& m : j.at("mutations")) {
        s.mutations.push_back(wire::layout_mutation_from_json(m));
    }
    if (!j.at("truncation").is_null()) {
        const auto& t = j["truncation"];
        TruncationSpec ts;
        ts.kind = wire::truncation_cut_from_json({{"kind", t.at("kind")}, {"offset", 0}}).kind;
        ts.bytes_after_serverhello = t.at("bytes_after_serverhello").get<std::size_t>();
        s.truncation = ts;
    }
    return s;
}

json to_json(const EndpointSpec& e)
{
    return {{"groups", e.groups},   {"versions", e.versions}, {"tls12_suites", e.tls12_suites},
            {"mtls", e.mtls},       {"chain", e.chain},       {"failure", e.failure},
            {"latency_s", e.latency_s}};
}

EndpointSpec endpoint_from_json(const json& j)
{
    EndpointSpec e;
    e.groups = j.at("groups").get<std::vector<std::string>>();
    e.versions = j.at("versions").get<std::vector<std::string>>();
    e.tls12_suites = j.at("tls12_suites").get<std::vector<std::string>>();
    e.mtls = j.at("mtls").get<bool>();
    e.chain = j.at("chain").get<std::vector<std::string>>();
    e.failure = j.at("failure").get<std::string>();
    e.latency_s = j.at("latency_s").get<double>();
    return e;
}

// ---- catalog builders ----------------------------------------------------

const std::string x25519 = "X25519";
const std::string hybrid = "X25519MLKEM768";
const std::string p256 = "secp256r1";

SessionSpec tls13(const std::string& group, std::vector<std::string> chain)
{
    SessionSpec s;
    s.tls_version = "TLS1.3";
    s.offered_groups = group == hybrid ? std::vector<std::string>{hybrid, x25519} : std::vector<std::string>{group};
    s.key_share_groups = {group};
    s.selected_group = group;
    s.server_chain = std::move(chain);
    return s;
}

SessionSpec tls12(const std::string& suite, std::vector<std::string> chain)
{
    SessionSpec s;
    s.tls_version = "TLS1.2";
    s.offered_groups = {x25519, p256};
    s.cipher_suite = suite;
    if (suite.find("ECDHE") != std::string::npos) {
        s.selected_group = x25519;
    }
    s.server_chain = std::move(chain);
    return s;
}

EndpointSpec endpoint13(std::vector<std::string> groups, std::vector<std::string> chain, bool mtls = false)
{
    EndpointSpec e;
    e.groups = std::move(groups);
    e.chain = std::move(chain);
    e.mtls = mtls;
    return e;
}

EndpointSpec endpoint12(const std::string& suite, std::vector<std::string> chain, bool mtls = false)
{
    EndpointSpec e;
    e.groups = {x25519, p256};
    e.versions = {"TLS1.2"};
    e.tls12_suites = {suite};
    e.chain = std::move(chain);
    e.mtls = mtls;
    return e;
}

// Classical then hybrid probe, both in the capture run.
std::vector<ProbeSpec> dual_probes(Linkage linkage = Linkage::same_run_linked, std::size_t phase = 0)
{
    return {{"classical", linkage, 1.0, phase}, {"hybrid", linkage, 2.0, phase}};
}

ChainSpec chain_at(ChainSource source, std::vector<std::string> fixtures, double offset = 3.0)
{
    ChainSpec c;
    c.source = source;
    c.fixtures = std::move(fixtures);
    c.offset_s = offset;
    c.linkage = Linkage::same_target_probe_time;
    return c;
}

ScenarioSpec canonical(std::string id, std::string title, SessionSpec session, EndpointSpec endpoint)
{
    ScenarioSpec s;
    s.scenario_id = std::move(id);
    s.family = Family::canonical;
    s.title = std::move(title);
    s.session = std::move(session);
    s.chains = {chain_at(ChainSource::active_probe, endpoint.chain)};
    s.endpoint_phases = {std::move(endpoint)};
    s.probes = dual_probes();
    return s;
}

ScenarioSpec stress(std::string id, std::string title, SessionSpec session, EndpointSpec endpoint)
{
    ScenarioSpec s;
    s.scenario_id = std::move(id);
    s.family = Family::stress;
    s.title = std::move(title);
    s.session = std::move(session);
    s.chains = {chain_at(ChainSource::scenario_artifact, endpoint.chain)};
    s.endpoint_phases = {std::move(endpoint)};
    s.probes = dual_probes();
    s.contract = Contract{};
    return s;
}

Assertion expect(std::string path, Predicate p, json arg = nullptr, std::vector<Mode> modes = {})
{
    return Assertion{std::move(path), p, std::move(arg), std::move(modes)};
}

const std::vector<Mode> with_active = {Mode::B2_passive_active, Mode::B3_multi_surface};
const std::vector<Mode> passive_only = {Mode::B1_passive_only};
const std::vector<Mode> multi_surface = {Mode::B3_multi_surface};

const std::string group_path = "session_profile.selected_group";
const std::string ke_path = "key_establishment_profile.profile";

}  // namespace

std::string_view to_string(Family f)
{
    return f == Family::canonical ? "canonical" : "stress";
}

Family family_from_string(std::string_view s)
{
    if (s == "canonical") {
        return Family::canonical;
    }
    if (s == "stress") {
        return Family::stress;
    }
    throw Error("invalid_scenario", "unknown family '" + std::string(s) + "'");
}

std::string_view to_string(Predicate p)
{
    for (const auto& [pred, name] : predicate_names) {
        if (pred == p) {
            return name;
        }
    }
    return "equals";
}

Predicate predicate_from_string(std::string_view s)
{
    for (const auto& [pred, name] : predicate_names) {
        if (name == s) {
            return pred;
        }
    }
    throw Error("invalid_contract", "unknown predicate '" + std::string(s) + "'");
}

bool Assertion::applies_to(Mode m) const
{
    return modes.empty() || std::find(modes.begin(), modes.end(), m) != modes.end();
}

json to_json(const Assertion& a)
{
    json modes = json::array();
    for (auto m : a.modes) {
        modes.push_back(std::string(engine::short_name(m)));
    }
    return {{"field_path", a.field_path},
            {"predicate", std::string(to_string(a.predicate))},
            {"argument", a.argument},
            {"modes", modes}};
}

Assertion assertion_from_json(const json& j)
{
    Assertion a;
    a.field_path = j.at("field_path").get<std::string>();
    a.predicate = predicate_from_string(j.at("predicate").get<std::string>());
    a.argument = j.value("argument", json());
    for (const auto& m : j.value("modes", json::array())) {
        a.modes.push_back(engine::mode_from_string(m.get<std::string>()));
    }
    return a;
}

json to_json(const Contract& c)
{
    json out = json::array();
    for (const auto& a : c.assertions) {
        out.push_back(to_json(a));
    }
    return {{"assertions", out}};
}

Contract contract_from_json(const json& j)
{
    Contract c;
    for (const auto& a : j.at("assertions")) {
        c.assertions.push_back(assertion_from_json(a));
    }
    return c;
}

json to_json(const ScenarioSpec& s)
{
    json phases = json::array();
    for (const auto& e : s.endpoint_phases) {
        phases.push_back(to_json(e));
    }
    json probes = json::array();
    for (const auto& p : s.probes) {
        probes.push_back({{"profile", p.profile},
                          {"linkage", std::string(surfaces::to_string(p.linkage))},
                          {"offset_s", p.offset_s},
                          {"endpoint_phase", p.endpoint_phase}});
    }
    json chains = json::array();
    for (const auto& c : s.chains) {
        chains.push_back({{"source", std::string(surfaces::to_string(c.source))},
                          {"fixtures", c.fixtures},
                          {"offset_s", c.offset_s},
                          {"linkage", std::string(surfaces::to_string(c.linkage))}});
    }
    return {{"scenario_id", s.scenario_id},
            {"family", std::string(to_string(s.family))},
            {"title", s.title},
            {"session", to_json(s.session)},
            {"address_family", s.address_family == AddressFamily::ipv6 ? "ipv6" : "ipv4"},
            {"endpoint_phases", phases},
            {"probes", probes},
            {"chains", chains},
            {"contract", s.contract ? to_json(*s.contract) : json(nullptr)}};
}

ScenarioSpec scenario_spec_from_json(const json& j)
{
    ScenarioSpec s;
    s.scenario_id = j.at("scenario_id").get<std::string>();
    s.family = family_from_string(j.at("family").get<std::string>());
    s.title = j.at("title").get<std::string>();
    s.session = session_from_json(j.at("session"));
    s.address_family = j.at("address_family") == "ipv6" ? AddressFamily::ipv6 : AddressFamily::ipv4;
    for (const auto& e : j.at("endpoint_phases")) {
        s.endpoint_phases.push_back(endpoint_from_json(e));
    }
    for (const auto& p : j.at("probes")) {
        s.probes.push_back({p.at("profile").get<std::string>(),
                            surfaces::linkage_from_string(p.at("linkage").get<std::string>()),
                            p.at("offset_s").get<double>(), p.at("endpoint_phase").get<std::size_t>()});
    }
    for (const auto& c : j.at("chains")) {
        s.chains.push_back({surfaces::chain_source_from_string(c.at("source").get<std::string>()),
                            c.at("fixtures").get<std::vector<std::string>>(), c.at("offset_s").get<double>(),
                            surfaces::linkage_from_string(c.at("linkage").get<std::string>())});
    }
    if (!j.at("contract").is_null()) {
        s.contract = contract_from_json(j["contract"]);
    }
    return s;
}

std::vector<ScenarioSpec> catalog_v1()
{
    const std::vector<std::string> rsa398 = {"leaf_rsa_398"};
    const std::vector<std::string> rsa90 = {"leaf_rsa_90"};
    const std::vector<std::string> ecdsa398 = {"leaf_ecdsa_398"};
    const std::vector<std::string> ecdsa90 = {"leaf_ecdsa_90"};
    const std::vector<std::string> ecdsa_chain = {"leaf_ecdsa_90", "intermediate_ecdsa"};
    const std::vector<std::string> classical_groups = {x25519, p256};
    const std::vector<std::string> both_groups = {hybrid, x25519};
    const std::string static_rsa = "TLS_RSA_WITH_AES_128_GCM_SHA256";
    const std::string ecdhe_rsa = "TLS_ECDHE_RSA_WITH_AES_128_GCM_SHA256";
    const std::string ecdhe_ecdsa = "TLS_ECDHE_ECDSA_WITH_AES_128_GCM_SHA256";

    std::vector<ScenarioSpec> out;

    // Canonical: one clean fact pattern each, exact-match truth.
    out.push_back(canonical("c01_tls12_static_rsa", "TLS 1.2 static RSA", tls12(static_rsa, rsa398),
                            endpoint12(static_rsa, rsa398)));
    out.push_back(canonical("c02_tls12_ecdhe_rsa", "TLS 1.2 ECDHE_RSA", tls12(ecdhe_rsa, rsa398),
                            endpoint12(ecdhe_rsa, rsa398)));
    out.push_back(canonical("c03_tls12_ecdhe_ecdsa", "TLS 1.2 ECDHE_ECDSA", tls12(ecdhe_ecdsa, ecdsa398),
                            endpoint12(ecdhe_ecdsa, ecdsa398)));
    {
        auto s = tls12(ecdhe_rsa, rsa398);
        s.mtls = true;
        s.client_chain = {"client_ecdsa"};
        out.push_back(canonical("c04_tls12_mtls", "TLS 1.2 mTLS", s, endpoint12(ecdhe_rsa, rsa398, true)));
    }
    out.push_back(canonical("c05_tls13_x25519", "TLS 1.3 X25519", tls13(x25519, ecdsa398),
                            endpoint13(classical_groups, ecdsa398)));
    out.push_back(canonical("c06_tls13_hybrid", "TLS 1.3 X25519MLKEM768", tls13(hybrid, ecdsa_chain),
                            endpoint13(both_groups, ecdsa_chain)));
    out.push_back(canonical("c07_rsa_leaf", "RSA leaf", tls13(x25519, rsa398), endpoint13(classical_groups, rsa398)));
    out.push_back(
        canonical("c08_ecdsa_leaf", "ECDSA leaf", tls13(x25519, ecdsa398), endpoint13(classical_groups, ecdsa398)));
    {
        auto s = tls13(x25519, ecdsa398);
        s.mtls = true;
        s.client_chain = {"client_ecdsa"};
        out.push_back(canonical("c09_tls13_mtls_classical", "TLS 1.3 mTLS sentinel (classical)", s,
                                endpoint13(classical_groups, ecdsa398, true)));
        auto h = tls13(hybrid, ecdsa398);
        h.mtls = true;
        h.client_chain = {"client_ecdsa"};
        out.push_back(canonical("c10_tls13_mtls_hybrid", "TLS 1.3 mTLS sentinel (hybrid)", h,
                                endpoint13(both_groups, ecdsa398, true)));
    }
    out.push_back(canonical("c11_lifecycle_short", "short-lived leaf", tls13(x25519, rsa90),
                            endpoint13(classical_groups, rsa90)));
    out.push_back(canonical("c12_lifecycle_long", "long-lived leaf", tls13(x25519, ecdsa398),
                            endpoint13(classical_groups, ecdsa398)));
    out.push_back(canonical("c13_leaf_intermediate", "leaf plus intermediate", tls13(x25519, ecdsa_chain),
                            endpoint13(classical_groups, ecdsa_chain)));
    {
        auto sc = canonical("c14_ipv6_loopback", "IPv6 loopback sentinel", tls13(x25519, ecdsa398),
                            endpoint13(classical_groups, ecdsa398));
        sc.address_family = AddressFamily::ipv6;
        out.push_back(sc);
    }

    // Stress: partial, conflicting or asymmetric evidence with contracts.
    {
        auto s = stress("s01_support_vs_negotiation", "hybrid-capable endpoint, classical session",
                        tls13(x25519, ecdsa398), endpoint13(both_groups, ecdsa398));
        s.contract->assertions = {
            expect(group_path, Predicate::equals, x25519),
            expect("capability_profile.capability_broader_than_session", Predicate::capability_broader_true,
                   nullptr, with_active),
            expect("capability_profile.capability_broader_than_session", Predicate::is_unknown, nullptr,
                   passive_only),
        };
        out.push_back(s);
    }
    {
        auto session = tls13(hybrid, ecdsa398);
        session.truncation = TruncationSpec{wire::TruncationCut::Kind::pre_serverhello, 0};
        auto s = stress("s02_truncated_pre_serverhello", "capture ends before ServerHello", session,
                        endpoint13(both_groups, ecdsa398));
        s.contract->assertions = {
            expect(group_path, Predicate::is_unknown),
            expect(ke_path, Predicate::is_unknown),
            expect("session_core", Predicate::plane_open),
        };
        out.push_back(s);
    }
    {
        auto session = tls13(x25519, ecdsa398);
        session.truncation = TruncationSpec{wire::TruncationCut::Kind::post_serverhello, 0};
        auto s = stress("s03_truncated_post_serverhello", "capture ends right after ServerHello", session,
                        endpoint13(classical_groups, ecdsa398));
        s.contract->assertions = {
            expect(group_path, Predicate::equals, x25519),
            expect("session_profile.completeness_status", Predicate::equals, "truncated_post_serverhello"),
            expect("session_profile.mtls_seen", Predicate::is_unknown, nullptr, passive_only),
        };
        out.push_back(s);
    }
    {
        auto session = tls13(hybrid, ecdsa398);
        session.truncation = TruncationSpec{wire::TruncationCut::Kind::byte_offset, 7};
        auto s = stress("s04_truncated_mid_server_flight", "capture cut inside the server flight", session,
                        endpoint13(both_groups, ecdsa398));
        s.contract->assertions = {
            expect(group_path, Predicate::equals, hybrid),
            expect(ke_path, Predicate::equals, "hybrid"),
            expect("session_core", Predicate::plane_closed),
        };
        out.push_back(s);
    }
    {
        auto session = tls13(hybrid, ecdsa398);
        session.mutations = {wire::LayoutMutation::fragment(64)};
        auto s = stress("s05_fragmented", "handshake fragmented across small records", session,
                        endpoint13(both_groups, ecdsa398));
        s.contract->assertions = {
            expect(group_path, Predicate::equals, hybrid),
            expect(ke_path, Predicate::equals, "hybrid"),
        };
        out.push_back(s);
    }
    {
        auto session = tls12(ecdhe_rsa, rsa398);
        session.mutations = {wire::LayoutMutation::coalesce()};
        auto s = stress("s06_coalesced_tls12", "TLS 1.2 server flight coalesced into one record", session,
                        endpoint12(ecdhe_rsa, rsa398));
        s.contract->assertions = {
            expect("session_profile.cipher_suite", Predicate::equals, ecdhe_rsa),
            expect(group_path, Predicate::equals, x25519),
            expect("authentication_profile.leaf_spki_algorithm", Predicate::equals, "RSA"),
        };
        out.push_back(s);
    }
    {
        auto session = tls13(x25519, ecdsa398);
        session.mutations = {wire::LayoutMutation::fragment(48), wire::LayoutMutation::segment_split(3)};
        auto s = stress("s07_fragment_and_split", "fragmented records split across TCP segments", session,
                        endpoint13(classical_groups, ecdsa398));
        s.contract->assertions = {
            expect(group_path, Predicate::equals, x25519),
            expect("session_core", Predicate::plane_closed),
        };
        out.push_back(s);
    }
    {
        auto s = stress("s08_drift_capability", "endpoint drops the hybrid group between probe rounds",
                        tls13(hybrid, ecdsa398), endpoint13(both_groups, ecdsa398));
        s.endpoint_phases.push_back(endpoint13({x25519}, ecdsa398));
        s.probes.push_back({"hybrid", Linkage::same_target_probe_time, drift_delta_s, 1});
        s.contract->assertions = {
            expect(group_path, Predicate::equals, hybrid),
            expect(group_path, Predicate::contradiction_flagged, nullptr, with_active),
        };
        out.push_back(s);
    }
    {
        auto s = stress("s09_drift_certificate", "leaf key type changes after the capture",
                        tls12(ecdhe_rsa, rsa398), endpoint12(ecdhe_rsa, rsa398));
        s.chains = {chain_at(ChainSource::active_probe, ecdsa398, drift_delta_s)};
        s.contract->assertions = {
            expect("authentication_profile.leaf_spki_algorithm", Predicate::equals, "RSA"),
            expect("authentication_profile.leaf_spki_algorithm", Predicate::contradiction_flagged, nullptr,
                   with_active),
        };
        out.push_back(s);
    }
    {
        auto s = stress("s10_drift_lifecycle", "short-lived leaf replaced by a long-lived one",
                        tls13(x25519, ecdsa90), endpoint13(classical_groups, ecdsa90));
        s.chains = {chain_at(ChainSource::active_probe, ecdsa90),
                    chain_at(ChainSource::active_probe, ecdsa398, drift_delta_s)};
        s.contract->assertions = {
            expect("lifecycle_profile.validity_days", Predicate::contradiction_flagged, nullptr, with_active),
            expect("lifecycle_profile.validity_days", Predicate::equals, 90, multi_surface),
        };
        out.push_back(s);
    }
    {
        auto session = tls13(hybrid, ecdsa398);
        session.offered_groups = both_groups;
        session.key_share_groups = {x25519};
        session.hrr_group = hybrid;
        session.hrr_second_leg = false;
        auto s = stress("s11_hrr_incomplete", "HelloRetryRequest without the second leg", session,
                        endpoint13(both_groups, ecdsa398));
        s.probes = dual_probes(Linkage::same_target_probe_time);
        s.contract->assertions = {
            expect(group_path, Predicate::is_unknown),
            expect("session_profile.hrr_seen", Predicate::equals, true),
            expect(ke_path, Predicate::equals, "hybrid"),
            expect("session_core", Predicate::plane_open),
        };
        out.push_back(s);
    }
    {
        auto session = tls13(x25519, ecdsa398);
        session.psk = "psk_dhe_ke";
        auto s = stress("s12_psk_dhe_resumption", "PSK resumption with (EC)DHE", session,
                        endpoint13(classical_groups, ecdsa398));
        s.contract->assertions = {
            expect(group_path, Predicate::equals, x25519),
            expect("session_profile.fresh_authentication", Predicate::is_not_applicable,
                   "psk_resumption_no_fresh_auth"),
        };
        out.push_back(s);
    }
    {
        auto session = tls13(x25519, ecdsa398);
        session.psk = "psk_ke";
        session.key_share_groups = {};
        session.selected_group.reset();
        auto s = stress("s13_psk_only_resumption", "PSK resumption without key exchange", session,
                        endpoint13(classical_groups, ecdsa398));
        s.contract->assertions = {
            expect(group_path, Predicate::is_not_applicable, "psk_ke_no_dhe"),
            expect(ke_path, Predicate::is_not_applicable, "psk_ke_no_dhe"),
        };
        out.push_back(s);
    }
    {
        auto session = tls13(x25519, ecdsa398);
        session.psk = "psk_dhe_ke";
        auto s = stress("s14_mtls_resumption_crossover", "resumed session on an mTLS endpoint", session,
                        endpoint13(classical_groups, ecdsa398, true));
        s.contract->assertions = {
            expect("session_profile.mtls_seen", Predicate::is_unknown, nullptr, passive_only),
            expect("session_profile.mtls_seen", Predicate::equals, true, with_active),
            expect("session_profile.fresh_authentication", Predicate::is_not_applicable,
                   "psk_resumption_no_fresh_auth"),
        };
        out.push_back(s);
    }
    {
        auto session = tls13(hybrid, ecdsa398);
        session.mutations = {wire::LayoutMutation::segment_split(5)};
        auto s = stress("s15_segment_split", "hybrid key share split across TCP segments", session,
                        endpoint13(both_groups, ecdsa398));
        s.contract->assertions = {
            expect(group_path, Predicate::equals, hybrid),
            expect(ke_path, Predicate::equals, "hybrid"),
        };
        out.push_back(s);
    }
    return out;
}

}  // namespace pqobs::bench
