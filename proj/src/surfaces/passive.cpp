// SPDX-License-Identifier: Apache-2.0
#include "pqobs/surfaces/passive.hpp"

#include "pqobs/common/error.hpp"
#include "pqobs/common/schema.hpp"
#include "pqobs/surfaces/types.hpp"
#include "pqobs/wire/constants.hpp"

namespace pqobs::surfaces {

using nlohmann::json;
using wire::Completeness;

namespace {

std::string group_label(const registry::Bundle& reg, std::uint16_t cp)
{
    const auto* e = reg.find_raw(registry::Kind::named_group, registry::RawId(cp));
    return e ? e->canonical_name : registry::format_raw_id(registry::RawId(cp));
}

std::string suite_label(std::uint16_t id)
{
    if (const auto* info = wire::cipher_suite_info(id)) {
        return std::string(info->name);
    }
    return registry::format_raw_id(registry::RawId(id));
}

EvidenceValue group_evidence(const registry::Bundle& reg, std::uint16_t cp, const std::string& why)
{
    auto ev = registry::canonicalize(reg, registry::Kind::named_group, registry::RawId(cp)).evidence();
    if (ev.is_known()) {
        ev.reasons.push_back(why);
    }
    return ev;
}

EvidenceValue selected_group_for(const wire::HandshakeView& v, const registry::Bundle& reg)
{
    if (v.completeness == Completeness::malformed && !v.final_server_hello()) {
        return EvidenceValue::unknown("malformed_transcript");
    }
    if (!v.server_hello) {
        return EvidenceValue::unknown("truncated_pre_serverhello");
    }
    const auto* sh = v.final_server_hello();
    if (sh == nullptr) {
        return EvidenceValue::unknown("hrr_second_leg_missing");
    }
    if (sh->selected_version == wire::version::tls13) {
        if (sh->key_share_group) {
            return group_evidence(reg, *sh->key_share_group, "server_key_share");
        }
        if (sh->psk_selected) {
            return EvidenceValue::not_applicable("psk_ke_no_dhe");
        }
        return EvidenceValue::unknown("key_share_missing");
    }
    const auto* suite = wire::cipher_suite_info(sh->selected_cipher_suite);
    if (suite == nullptr) {
        return EvidenceValue::unknown("unknown_cipher_suite");
    }
    if (suite->kx == wire::KeyExchange::static_rsa) {
        return EvidenceValue::not_applicable("static_rsa");
    }
    if (v.tls12_server_key_exchange_group) {
        return group_evidence(reg, *v.tls12_server_key_exchange_group, "server_key_exchange");
    }
    return EvidenceValue::unknown("server_key_exchange_missing");
}

EvidenceValue mtls_for(const wire::HandshakeView& v)
{
    if (!v.server_hello) {
        return EvidenceValue::unknown("truncated_pre_serverhello");
    }
    const auto* sh = v.final_server_hello();
    if (sh == nullptr) {
        return EvidenceValue::unknown("hrr_second_leg_missing");
    }
    if (sh->selected_version == wire::version::tls13) {
        // CertificateRequest travels inside the encrypted flight.
        return EvidenceValue::unknown("encrypted_handshake");
    }
    if (v.tls12_certificate_request_seen) {
        return EvidenceValue::known(true, {"certificate_request_visible"});
    }
    if (v.tls12_server_hello_done_seen) {
        return EvidenceValue::known(false, {"server_flight_without_certificate_request"});
    }
    return EvidenceValue::unknown("truncated_before_server_hello_done");
}

EvidenceValue fresh_auth_for(const wire::HandshakeView& v)
{
    if (!v.server_hello) {
        return EvidenceValue::unknown("truncated_pre_serverhello");
    }
    const auto* sh = v.final_server_hello();
    if (sh == nullptr) {
        return EvidenceValue::unknown("hrr_second_leg_missing");
    }
    if (sh->psk_selected) {
        return EvidenceValue::not_applicable("psk_resumption_no_fresh_auth");
    }
    return EvidenceValue::known(true, {"full_handshake"});
}

}  // namespace

Provenance make_provenance(const wire::Transcript& t, const registry::Bundle& reg)
{
    Provenance p;
    p.parser_version = std::string(parser_version);
    p.registry_version = reg.version();
    p.artifact_id = t.artifact_id;
    p.digest = t.digest;
    if (!t.flows.empty()) {
        p.capture_timestamps = {t.flows.front().timestamp, t.flows.back().timestamp};
    }
    return p;
}

PassiveObservation build_passive_observation(const wire::HandshakeView& v, const registry::Bundle& reg,
                                             Provenance provenance)
{
    PassiveObservation o;
    o.provenance = std::move(provenance);
    o.completeness_status = v.completeness;
    o.layout_flags = v.layout_flags;
    if (v.client_hello) {
        for (auto g : v.client_hello->offered_groups) {
            o.offered_groups.push_back(group_label(reg, g));
        }
    }

    const auto* sh = v.final_server_hello();
    if (sh != nullptr) {
        std::string version_reason = sh->supported_versions_present ? "supported_versions" : "legacy_version";
        o.negotiated_version = EvidenceValue::known(wire::version_name(sh->selected_version), {version_reason});
        o.cipher_suite = EvidenceValue::known(suite_label(sh->selected_cipher_suite), {"server_hello"});
    } else {
        auto why = v.server_hello ? "hrr_second_leg_missing" : "truncated_pre_serverhello";
        o.negotiated_version = EvidenceValue::unknown(why);
        o.cipher_suite = EvidenceValue::unknown(why);
    }

    if (v.server_hello) {
        o.hrr_seen = EvidenceValue::known(v.server_hello->is_hrr, {"server_hello_random"});
    } else {
        o.hrr_seen = EvidenceValue::unknown("truncated_pre_serverhello");
    }
    if (v.hrr_seen() && v.server_hello->key_share_group) {
        o.hrr_requested_group = group_evidence(reg, *v.server_hello->key_share_group, "hello_retry_request");
    } else if (v.server_hello) {
        o.hrr_requested_group = EvidenceValue::not_applicable("no_hello_retry_request");
    } else {
        o.hrr_requested_group = EvidenceValue::unknown("truncated_pre_serverhello");
    }

    o.selected_group = selected_group_for(v, reg);
    o.mtls_seen = mtls_for(v);
    o.fresh_authentication = fresh_auth_for(v);
    if (sh != nullptr && sh->selected_version != wire::version::tls13) {
        o.tls12_chain = v.tls12_certificate_chain;
    }
    return o;
}

PassiveObservation observe_transcript(const wire::Transcript& t, const registry::Bundle& reg)
{
    return build_passive_observation(wire::decode_transcript(t), reg, make_provenance(t, reg));
}

json to_json(const PassiveObservation& o)
{
    json j;
    j["surface"] = std::string(to_string(Surface::passive));
    j["negotiated_version"] = o.negotiated_version;
    j["selected_group"] = o.selected_group;
    j["cipher_suite"] = o.cipher_suite;
    j["hrr_seen"] = o.hrr_seen;
    j["hrr_requested_group"] = o.hrr_requested_group;
    j["mtls_seen"] = o.mtls_seen;
    j["fresh_authentication"] = o.fresh_authentication;
    j["completeness_status"] = std::string(wire::to_string(o.completeness_status));
    j["offered_groups"] = o.offered_groups;
    if (o.tls12_chain) {
        json chain = json::array();
        for (const auto& c : *o.tls12_chain) {
            chain.push_back(to_hex(c));
        }
        j["tls12_chain_hex"] = chain;
    } else {
        j["tls12_chain_hex"] = nullptr;
    }
    j["layout_flags"] = {{"fragmented", o.layout_flags.fragmented}, {"coalesced", o.layout_flags.coalesced}};
    j["provenance"] = {{"parser_version", o.provenance.parser_version},
                       {"registry_version", o.provenance.registry_version},
                       {"artifact_id", o.provenance.artifact_id},
                       {"digest", o.provenance.digest},
                       {"capture_timestamps", o.provenance.capture_timestamps}};
    return j;
}

PassiveObservation passive_observation_from_json(const json& j)
{
    validate_or_throw("passive_observation", j, "passive observation");
    PassiveObservation o;
    o.negotiated_version = j.at("negotiated_version").get<EvidenceValue>();
    o.selected_group = j.at("selected_group").get<EvidenceValue>();
    o.cipher_suite = j.at("cipher_suite").get<EvidenceValue>();
    o.hrr_seen = j.at("hrr_seen").get<EvidenceValue>();
    o.hrr_requested_group = j.at("hrr_requested_group").get<EvidenceValue>();
    o.mtls_seen = j.at("mtls_seen").get<EvidenceValue>();
    o.fresh_authentication = j.at("fresh_authentication").get<EvidenceValue>();
    o.completeness_status = wire::completeness_from_string(j.at("completeness_status").get<std::string>());
    o.offered_groups = j.at("offered_groups").get<std::vector<std::string>>();
    if (!j.at("tls12_chain_hex").is_null()) {
        std::vector<Bytes> chain;
        for (const auto& c : j["tls12_chain_hex"]) {
            chain.push_back(from_hex(c.get<std::string>()));
        }
        o.tls12_chain = std::move(chain);
    }
    o.layout_flags.fragmented = j.at("layout_flags").at("fragmented").get<bool>();
    o.layout_flags.coalesced = j.at("layout_flags").at("coalesced").get<bool>();
    const auto& p = j.at("provenance");
    o.provenance.parser_version = p.at("parser_version").get<std::string>();
    o.provenance.registry_version = p.at("registry_version").get<std::string>();
    o.provenance.artifact_id = p.at("artifact_id").get<std::string>();
    o.provenance.digest = p.at("digest").get<std::string>();
    o.provenance.capture_timestamps = p.at("capture_timestamps").get<std::vector<double>>();
    return o;
}

}  // namespace pqobs::surfaces
