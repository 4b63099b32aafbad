// SPDX-License-Identifier: Apache-2.0
#include "pqobs/bench/generate.hpp"

#include <algorithm>
#include <set>

#include "pqobs/common/error.hpp"
#include "pqobs/common/sha256.hpp"
#include "pqobs/registry/registry.hpp"
#include "pqobs/wire/constants.hpp"
#include "pqobs/wire/mutations.hpp"

namespace pqobs::bench {

using surfaces::ChainSource;
using surfaces::Linkage;

namespace {

std::uint64_t mix(std::uint64_t seed, std::string_view label)
{
    // FNV-1a over the label, folded into the seed.
    std::uint64_t h = 1469598103934665603ULL ^ seed;
    for (unsigned char c : label) {
        h = (h ^ c) * 1099511628211ULL;
    }
    return h;
}

std::uint16_t group_cp(const registry::Bundle& reg, const std::string& name)
{
    const auto* e = reg.find_name(registry::Kind::named_group, name);
    if (e == nullptr) {
        throw Error("generation_error", "unknown group '" + name + "'");
    }
    return std::get<std::uint16_t>(e->raw_id);
}

std::vector<std::uint16_t> group_cps(const registry::Bundle& reg, const std::vector<std::string>& names)
{
    std::vector<std::uint16_t> out;
    for (const auto& n : names) {
        out.push_back(group_cp(reg, n));
    }
    return out;
}

std::uint16_t suite_cp(const std::string& name)
{
    auto cp = wire::cipher_suite_by_name(name);
    if (!cp) {
        throw Error("generation_error", "unknown cipher suite '" + name + "'");
    }
    return *cp;
}

std::uint16_t version_cp(const std::string& name)
{
    auto v = wire::version_from_name(name);
    if (!v) {
        throw Error("generation_error", "unknown TLS version '" + name + "'");
    }
    return *v;
}

json known(json v)
{
    return {{"state", "known"}, {"value", std::move(v)}};
}

json not_applicable(const std::string& reason)
{
    return {{"state", "not_applicable"}, {"reasons", {reason}}};
}

bool is_ecdhe_curve(const std::string& g)
{
    return g == "X25519" || g == "secp256r1" || g == "secp384r1";
}

// What each bench profile gets from an endpoint: the first profile group the
// endpoint lists (TLS 1.3), the first shared classical curve (TLS 1.2
// ECDHE), nothing for static RSA.
std::optional<std::string> expected_selection(const EndpointSpec& e, const surfaces::ProbeProfile& p)
{
    bool tls13 = std::find(e.versions.begin(), e.versions.end(), "TLS1.3") != e.versions.end();
    if (!tls13 && (e.tls12_suites.empty() || e.tls12_suites.front().find("ECDHE") == std::string::npos)) {
        return std::nullopt;
    }
    for (const auto& g : p.offered_groups) {
        bool listed = std::find(e.groups.begin(), e.groups.end(), g) != e.groups.end();
        if (listed && (tls13 || is_ecdhe_curve(g))) {
            return g;
        }
    }
    return std::nullopt;
}

wire::Transcript apply_truncation(const wire::Transcript& t, const TruncationSpec& spec)
{
    if (spec.kind != wire::TruncationCut::Kind::byte_offset) {
        return wire::truncate_transcript(t, {spec.kind, 0});
    }
    std::optional<std::size_t> sh_end;
    for (const auto& span : wire::handshake_message_spans(t)) {
        if (span.direction == wire::Direction::server_to_client && span.type == wire::hs::server_hello &&
            !span.is_hrr) {
            sh_end = span.end;
        }
    }
    if (!sh_end) {
        throw Error("generation_error", "byte_offset truncation needs a ServerHello");
    }
    return wire::truncate_transcript(t, wire::TruncationCut::byte_offset(*sh_end + spec.bytes_after_serverhello));
}

}  // namespace

json to_json(const ChainArtifact& c)
{
    std::vector<std::string> hex;
    for (const auto& d : c.chain) {
        hex.push_back(to_hex(d));
    }
    return {{"source", std::string(surfaces::to_string(c.source))},
            {"timestamp", c.timestamp},
            {"linkage", std::string(surfaces::to_string(c.linkage))},
            {"fixtures", c.fixtures},
            {"chain_hex", hex}};
}

ChainArtifact chain_artifact_from_json(const json& j)
{
    ChainArtifact c;
    c.source = surfaces::chain_source_from_string(j.at("source").get<std::string>());
    c.timestamp = j.at("timestamp").get<double>();
    c.linkage = surfaces::linkage_from_string(j.at("linkage").get<std::string>());
    c.fixtures = j.at("fixtures").get<std::vector<std::string>>();
    for (const auto& h : j.at("chain_hex")) {
        c.chain.push_back(from_hex(h.get<std::string>()));
    }
    return c;
}

json to_json(const ScenarioBundle& b)
{
    json probes = json::array();
    for (const auto& p : b.probe_log) {
        probes.push_back(surfaces::to_json(p));
    }
    json chains = json::array();
    for (const auto& c : b.chain_artifacts) {
        chains.push_back(to_json(c));
    }
    return {{"scenario_id", b.scenario_id},
            {"family", std::string(to_string(b.family))},
            {"tls_version", b.tls_version},
            {"seed", b.seed},
            {"config", to_json(b.config)},
            {"transcript", wire::to_json(b.transcript)},
            {"probe_log", probes},
            {"chain_artifacts", chains},
            {"ground_truth", b.ground_truth ? *b.ground_truth : json(nullptr)},
            {"contract", b.contract ? to_json(*b.contract) : json(nullptr)}};
}

ScenarioBundle scenario_bundle_from_json(const json& j)
{
    ScenarioBundle b;
    b.scenario_id = j.at("scenario_id").get<std::string>();
    b.family = family_from_string(j.at("family").get<std::string>());
    b.tls_version = j.at("tls_version").get<std::string>();
    b.seed = j.at("seed").get<std::uint64_t>();
    b.config = scenario_spec_from_json(j.at("config"));
    b.transcript = wire::transcript_from_json(j.at("transcript"));
    for (const auto& p : j.at("probe_log")) {
        b.probe_log.push_back(surfaces::probe_result_from_json(p));
    }
    for (const auto& c : j.at("chain_artifacts")) {
        b.chain_artifacts.push_back(chain_artifact_from_json(c));
    }
    if (!j.at("ground_truth").is_null()) {
        b.ground_truth = j["ground_truth"];
    }
    if (!j.at("contract").is_null()) {
        b.contract = contract_from_json(j["contract"]);
    }
    if (b.family == Family::canonical && !b.ground_truth) {
        throw Error("invalid_bundle", b.scenario_id + ": canonical scenario without ground truth");
    }
    if (b.family == Family::stress && !b.contract) {
        throw Error("invalid_bundle", b.scenario_id + ": stress scenario without contract");
    }
    return b;
}

std::string bundle_digest(const ScenarioBundle& b)
{
    return sha256_hex(to_json(b).dump());
}

surfaces::ProbeProfile bench_profile(const std::string& profile_id)
{
    if (profile_id == "classical") {
        return surfaces::classical_profile(true);
    }
    if (profile_id == "hybrid") {
        return surfaces::hybrid_profile(true);
    }
    throw Error("generation_error", "unknown bench probe profile '" + profile_id + "'");
}

wire::WireConfig wire_config_for(const ScenarioSpec& spec, const registry::Bundle& reg, const FixtureSet& fx)
{
    const auto& s = spec.session;
    wire::WireConfig c;
    c.artifact_id = spec.scenario_id;
    c.version = version_cp(s.tls_version);
    bool tls13 = c.version == wire::version::tls13;
    if (tls13) {
        c.client.versions = {wire::version::tls13, wire::version::tls12};
        c.client.cipher_suites = {0x1301, 0x1302, 0x1303};
    } else {
        c.client.cipher_suites = {0xc02b, 0xc02f, 0x009c};
    }
    c.client.groups = group_cps(reg, s.offered_groups);
    c.client.key_share_groups = group_cps(reg, s.key_share_groups);
    c.client.signature_schemes = {wire::sig::ecdsa_secp256r1_sha256, wire::sig::rsa_pss_rsae_sha256,
                                  wire::sig::rsa_pkcs1_sha256};
    c.client.sni = spec.scenario_id + ".bench.pqobs.test";
    c.psk = wire::psk_mode_from_string(s.psk);
    if (c.psk != wire::PskMode::none) {
        c.client.offer_psk = true;
        c.client.psk_modes = {c.psk == wire::PskMode::psk_ke ? wire::psk_mode::psk_ke : wire::psk_mode::psk_dhe_ke};
    }
    c.cipher_suite = suite_cp(s.cipher_suite);
    if (s.selected_group) {
        c.selected_group = group_cp(reg, *s.selected_group);
    }
    if (s.hrr_group) {
        c.hrr_group = group_cp(reg, *s.hrr_group);
    }
    c.hrr_second_leg = s.hrr_second_leg;
    c.server_chain = fx.chain(s.server_chain);
    c.request_client_cert = s.mtls;
    c.client_chain = fx.chain(s.client_chain);
    c.start_time = scenario_epoch;
    wire::validate_wire_config(c);
    return c;
}

EmulatorConfig emulator_config_for(const EndpointSpec& e, const registry::Bundle& reg, const FixtureSet& fx,
                                   std::uint64_t seed)
{
    EmulatorConfig c;
    c.supported_groups = group_cps(reg, e.groups);
    c.tls_versions.clear();
    for (const auto& v : e.versions) {
        c.tls_versions.push_back(version_cp(v));
    }
    c.tls12_cipher_suites.clear();
    for (const auto& s : e.tls12_suites) {
        c.tls12_cipher_suites.push_back(suite_cp(s));
    }
    c.chain = fx.chain(e.chain);
    c.mtls = e.mtls;
    c.failure = failure_mode_from_string(e.failure);
    c.latency_s = e.latency_s;
    c.seed = seed;
    return c;
}

json derive_ground_truth(const ScenarioSpec& spec, const registry::Bundle& reg, const FixtureSet& fx)
{
    const auto& s = spec.session;
    json t = json::object();
    t["session_profile.negotiated_tls_version"] = known(s.tls_version);
    t["session_profile.cipher_suite"] = known(s.cipher_suite);
    t["session_profile.hrr_seen"] = known(s.hrr_group.has_value());
    t["session_profile.completeness_status"] = known("complete");
    t["session_profile.mtls_seen"] = known(s.mtls);
    t["session_profile.fresh_authentication"] =
        s.psk == "none" ? known(true) : not_applicable("psk_resumption_no_fresh_auth");

    std::optional<registry::Family> session_family;
    if (s.selected_group) {
        t["session_profile.selected_group"] = known(*s.selected_group);
        const auto* e = reg.find_name(registry::Kind::named_group, *s.selected_group);
        if (e == nullptr) {
            throw Error("generation_error", "unknown group '" + *s.selected_group + "'");
        }
        session_family = e->family;
        t["key_establishment_profile.profile"] = known(std::string(registry::to_string(e->family)));
    } else {
        auto why = s.psk == "psk_ke" ? "psk_ke_no_dhe" : "static_rsa";
        t["session_profile.selected_group"] = not_applicable(why);
        t["key_establishment_profile.profile"] = not_applicable(why);
    }

    std::set<std::string> lower_bound;
    bool hybrid_seen = false;
    for (const auto& p : spec.probes) {
        if (p.endpoint_phase != 0) {
            continue;
        }
        if (auto g = expected_selection(spec.endpoint_phases.at(0), bench_profile(p.profile))) {
            lower_bound.insert(*g);
            const auto* e = reg.find_name(registry::Kind::named_group, *g);
            hybrid_seen = hybrid_seen || (e && e->family == registry::Family::hybrid);
        }
    }
    t["capability_profile.supported_groups_lower_bound"] =
        known(std::vector<std::string>(lower_bound.begin(), lower_bound.end()));
    if (session_family) {
        t["capability_profile.capability_broader_than_session"] =
            known(hybrid_seen && *session_family == registry::Family::classical);
    } else {
        t["capability_profile.capability_broader_than_session"] =
            hybrid_seen ? not_applicable("static_rsa") : known(false);
    }

    // TLS 1.2 serves the chain in the clear; otherwise the first collected artifact.
    std::vector<std::string> chain;
    std::string source;
    if (s.tls_version == "TLS1.2") {
        chain = s.server_chain;
        source = std::string(surfaces::to_string(ChainSource::passive_tls12));
    } else if (!spec.chains.empty()) {
        chain = spec.chains.front().fixtures;
        source = std::string(surfaces::to_string(spec.chains.front().source));
    }
    if (!chain.empty()) {
        const auto& leaf = fx.get(chain.front());
        t["authentication_profile.leaf_spki_algorithm"] = known(leaf.key_type);
        t["authentication_profile.leaf_signature_algorithm"] = known(leaf.signature_algorithm);
        t["authentication_profile.chain_depth"] = known(chain.size());
        t["authentication_profile.chain_source_type"] = known(source);
        t["lifecycle_profile.validity_days"] = known(leaf.validity_days);
        t["lifecycle_profile.short_lived_bucket"] = known(leaf.validity_days <= 90);
    }
    return t;
}

ScenarioBundle generate_scenario(const ScenarioSpec& spec, std::uint64_t seed, const registry::Bundle& reg,
                                 const FixtureSet& fx)
{
    if (spec.endpoint_phases.empty()) {
        throw Error("generation_error", spec.scenario_id + ": no endpoint configuration");
    }
    ScenarioBundle b;
    b.scenario_id = spec.scenario_id;
    b.family = spec.family;
    b.tls_version = spec.session.tls_version;
    b.config = spec;
    b.seed = seed;

    auto wc = wire_config_for(spec, reg, fx);
    auto t = wire::encode_scenario_transcript(wc, mix(seed, spec.scenario_id + "/transcript"));
    for (std::size_t i = 0; i < spec.session.mutations.size(); ++i) {
        t = wire::apply_layout_mutation(t, spec.session.mutations[i],
                                        mix(seed, spec.scenario_id + "/mutation/" + std::to_string(i)));
    }
    if (spec.session.truncation) {
        t = apply_truncation(t, *spec.session.truncation);
    }
    b.transcript = std::move(t);

    surfaces::Target target;
    target.host = spec.address_family == AddressFamily::ipv6 ? "::1" : "127.0.0.1";
    target.port = 443;
    target.sni = spec.scenario_id + ".bench.pqobs.test";
    target.tier = surfaces::Tier::emulated;
    for (std::size_t i = 0; i < spec.probes.size(); ++i) {
        const auto& p = spec.probes[i];
        if (p.endpoint_phase >= spec.endpoint_phases.size()) {
            throw Error("generation_error", spec.scenario_id + ": probe names a missing endpoint phase");
        }
        auto label = spec.scenario_id + "/probe/" + std::to_string(i);
        Emulator emu(emulator_config_for(spec.endpoint_phases[p.endpoint_phase], reg, fx, mix(seed, label + "/server")));
        auto connector = emu.connector();
        surfaces::ProbeContext ctx;
        double now = scenario_epoch + p.offset_s;
        ctx.now = [now] { return now; };
        ctx.sleep = [](double) {};
        ctx.seed = mix(seed, label);
        ctx.linkage = p.linkage;
        b.probe_log.push_back(surfaces::run_probe(target, bench_profile(p.profile), *connector, surfaces::ProbeBudget{},
                                                  ctx, reg));
    }
    for (const auto& c : spec.chains) {
        b.chain_artifacts.push_back({c.source, scenario_epoch + c.offset_s, c.linkage, c.fixtures, fx.chain(c.fixtures)});
    }
    if (spec.family == Family::canonical) {
        b.ground_truth = derive_ground_truth(spec, reg, fx);
    } else {
        if (!spec.contract) {
            throw Error("generation_error", spec.scenario_id + ": stress scenario without contract");
        }
        b.contract = spec.contract;
    }
    return b;
}

std::vector<ScenarioBundle> generate_suite_v1(std::uint64_t seed)
{
    auto reg = registry::default_registry();
    const auto& fx = default_fixtures();
    std::vector<ScenarioBundle> out;
    for (const auto& spec : catalog_v1()) {
        out.push_back(generate_scenario(spec, seed, *reg, fx));
    }
    return out;
}

}  // namespace pqobs::bench
