// SPDX-License-Identifier: Apache-2.0
#include "pqobs/surfaces/probe.hpp"

#include <algorithm>
#include <arpa/inet.h>
#include <chrono>
#include <random>
#include <thread>

#include "pqobs/common/error.hpp"
#include "pqobs/common/schema.hpp"
#include "pqobs/wire/constants.hpp"
#include "pqobs/wire/decoder.hpp"
#include "pqobs/wire/encoder.hpp"
#include "pqobs/wire/messages.hpp"

namespace pqobs::surfaces {

namespace {

std::uint16_t resolve_codepoint(const registry::Bundle& reg, registry::Kind kind, const std::string& name)
{
    auto r = registry::canonicalize(reg, kind, registry::RawId(name));
    if (r.state != EvidenceState::known) {
        throw Error("invalid_profile", "cannot resolve '" + name + "' (" + r.reason + ")");
    }
    return std::get<std::uint16_t>(r.entry->raw_id);
}

struct Offer {
    std::vector<std::uint16_t> groups;
    std::vector<std::uint16_t> sig_schemes;
    std::vector<std::uint16_t> versions;
    bool tls13 = false;
    bool tls12 = false;
};

Offer resolve_offer(const ProbeProfile& p, const registry::Bundle& reg)
{
    Offer o;
    for (const auto& g : p.offered_groups) {
        o.groups.push_back(resolve_codepoint(reg, registry::Kind::named_group, g));
    }
    for (const auto& s : p.offered_signature_schemes) {
        o.sig_schemes.push_back(resolve_codepoint(reg, registry::Kind::signature_scheme, s));
    }
    for (const auto& v : p.tls_versions) {
        auto cp = wire::version_from_name(v);
        if (!cp || (*cp != wire::version::tls12 && *cp != wire::version::tls13)) {
            throw Error("invalid_profile", "unsupported TLS version '" + v + "'");
        }
        o.versions.push_back(*cp);
        o.tls13 = o.tls13 || *cp == wire::version::tls13;
        o.tls12 = o.tls12 || *cp == wire::version::tls12;
    }
    return o;
}

std::string group_label(const registry::Bundle& reg, std::uint16_t cp)
{
    const auto* e = reg.find_raw(registry::Kind::named_group, registry::RawId(cp));
    return e ? e->canonical_name : registry::format_raw_id(registry::RawId(cp));
}

class Handshake {
public:
    Handshake(const Target& target, const Offer& offer, std::mt19937_64& rng) : target_(target), offer_(offer)
    {
        random_ = wire::random_bytes(rng, 32);
        session_id_ = wire::random_bytes(rng, 32);
        rng_ = &rng;
    }

    Bytes client_hello(std::optional<std::uint16_t> retry_group)
    {
        wire::ClientHelloParams p;
        p.random = random_;
        p.session_id = session_id_;
        if (offer_.tls13) {
            p.cipher_suites = {0x1301, 0x1302, 0x1303};
        }
        if (offer_.tls12) {
            for (std::uint16_t s : {0xc02b, 0xc02f, 0xc030, 0x009c}) {
                p.cipher_suites.push_back(s);
            }
        }
        p.sni = target_.sni;
        p.supported_groups = offer_.groups;
        p.signature_schemes = offer_.sig_schemes;
        if (offer_.tls13) {
            p.supported_versions = offer_.versions;
            std::vector<wire::KeyShareEntry> shares;
            if (retry_group) {
                shares.push_back({*retry_group, wire::random_key_share(*rng_, *retry_group, false)});
            } else {
                for (auto g : offer_.groups) {
                    shares.push_back({g, wire::random_key_share(*rng_, g, false)});
                }
            }
            p.key_shares = std::move(shares);
        }
        auto body = wire::build_client_hello_body(p);
        return wire::frame_records(wire::content_type::handshake, wire::version::tls10,
                                   wire::handshake_message(wire::hs::client_hello, body));
    }

private:
    const Target& target_;
    const Offer& offer_;
    Bytes random_;
    Bytes session_id_;
    std::mt19937_64* rng_ = nullptr;
};

struct Attempt {
    ProbeOutcome outcome;
    bool retryable = false;
};

Attempt fail(ProbeOutcome::Kind kind, std::string reason)
{
    Attempt a;
    a.outcome.kind = kind;
    a.outcome.reason = std::move(reason);
    a.retryable = kind == ProbeOutcome::Kind::timeout || kind == ProbeOutcome::Kind::transport_error;
    return a;
}

Attempt attempt_once(const Target& target, const Offer& offer, Connector& connector, const ProbeBudget& budget,
                     const ProbeContext& ctx, const registry::Bundle& reg, std::mt19937_64& rng)
{
    double deadline = ctx.now() + budget.timeout_s;
    auto conn = connector.connect(target, budget.timeout_s);
    switch (conn.status) {
    case Connector::Status::ok: break;
    case Connector::Status::timeout: return fail(ProbeOutcome::Kind::timeout, "connect timeout");
    case Connector::Status::refused: return fail(ProbeOutcome::Kind::transport_error, "connection refused");
    case Connector::Status::error: return fail(ProbeOutcome::Kind::transport_error, conn.message);
    }
    auto& c = *conn.connection;

    Handshake hs(target, offer, rng);
    wire::Transcript t;
    std::string err;
    auto send_client = [&](Bytes bytes) {
        if (!c.send(bytes, err)) {
            return false;
        }
        t.flows.push_back({wire::Direction::client_to_server, 0.0, std::move(bytes)});
        t.flows.push_back({wire::Direction::server_to_client, 0.0, {}});
        return true;
    };
    if (!send_client(hs.client_hello(std::nullopt))) {
        return fail(ProbeOutcome::Kind::transport_error, "send failed: " + err);
    }
    bool retried = false;
    for (;;) {
        double left = deadline - ctx.now();
        if (left <= 0) {
            return fail(ProbeOutcome::Kind::timeout, "read timeout");
        }
        Bytes chunk;
        auto st = c.read(chunk, left, err);
        if (st == Connection::ReadStatus::timeout) {
            return fail(ProbeOutcome::Kind::timeout, "read timeout");
        }
        if (st == Connection::ReadStatus::error) {
            return fail(ProbeOutcome::Kind::transport_error, "read failed: " + err);
        }
        if (st == Connection::ReadStatus::data) {
            auto& data = t.flows.back().data;
            data.insert(data.end(), chunk.begin(), chunk.end());
        }
        auto v = wire::decode_transcript(t);
        if (v.completeness == wire::Completeness::malformed) {
            return fail(ProbeOutcome::Kind::handshake_failure,
                        "malformed server flight: " + (v.reasons.empty() ? std::string() : v.reasons.back()));
        }
        for (const auto& a : v.alerts) {
            if (a.direction == wire::Direction::server_to_client) {
                return fail(ProbeOutcome::Kind::handshake_failure, "alert " + std::to_string(a.description));
            }
        }
        if (v.server_hello && v.server_hello->is_hrr && !retried) {
            if (!v.server_hello->key_share_group) {
                return fail(ProbeOutcome::Kind::handshake_failure, "HelloRetryRequest without key_share");
            }
            retried = true;
            if (!send_client(hs.client_hello(v.server_hello->key_share_group))) {
                return fail(ProbeOutcome::Kind::transport_error, "send failed: " + err);
            }
            continue;
        }
        const auto* sh = v.final_server_hello();
        bool done = false;
        if (sh != nullptr) {
            done = sh->selected_version == wire::version::tls13 || v.tls12_server_hello_done_seen;
        }
        if (done) {
            Attempt a;
            auto& o = a.outcome;
            o.kind = ProbeOutcome::Kind::negotiated;
            o.version = wire::version_name(sh->selected_version);
            const auto* suite = wire::cipher_suite_info(sh->selected_cipher_suite);
            o.cipher_suite = suite ? std::string(suite->name)
                                   : registry::format_raw_id(registry::RawId(sh->selected_cipher_suite));
            o.hrr_seen = v.hrr_seen();
            std::optional<std::uint16_t> g =
                sh->selected_version == wire::version::tls13 ? sh->key_share_group : v.tls12_server_key_exchange_group;
            if (g) {
                o.group_codepoint = *g;
                o.group = group_label(reg, *g);
            }
            if (target.tier != Tier::public_blind) {
                if (sh->selected_version != wire::version::tls13) {
                    o.server_requested_client_auth = v.tls12_certificate_request_seen;
                } else {
                    o.server_requested_client_auth = c.endpoint_reported_client_auth();
                }
            }
            return a;
        }
        if (st == Connection::ReadStatus::closed) {
            return fail(ProbeOutcome::Kind::handshake_failure,
                        sh ? "connection closed inside server flight" : "connection closed before ServerHello");
        }
    }
}

}  // namespace

std::string_view to_string(Tier t)
{
    switch (t) {
    case Tier::public_blind: return "public_blind";
    case Tier::cooperative: return "cooperative";
    case Tier::emulated: return "emulated";
    }
    return "?";
}

Tier tier_from_string(std::string_view s)
{
    if (s == "public_blind") return Tier::public_blind;
    if (s == "cooperative") return Tier::cooperative;
    if (s == "emulated") return Tier::emulated;
    throw Error("schema_violation", "unknown tier '" + std::string(s) + "'");
}

std::string_view to_string(ProbeOutcome::Kind k)
{
    switch (k) {
    case ProbeOutcome::Kind::negotiated: return "negotiated";
    case ProbeOutcome::Kind::handshake_failure: return "handshake_failure";
    case ProbeOutcome::Kind::timeout: return "timeout";
    case ProbeOutcome::Kind::transport_error: return "transport_error";
    }
    return "?";
}

ProbeOutcome::Kind outcome_kind_from_string(std::string_view s)
{
    if (s == "negotiated") return ProbeOutcome::Kind::negotiated;
    if (s == "handshake_failure") return ProbeOutcome::Kind::handshake_failure;
    if (s == "timeout") return ProbeOutcome::Kind::timeout;
    if (s == "transport_error") return ProbeOutcome::Kind::transport_error;
    throw Error("schema_violation", "unknown probe outcome '" + std::string(s) + "'");
}

json to_json(const ProbeProfile& p)
{
    return {{"profile_id", p.profile_id},
            {"offered_groups", p.offered_groups},
            {"offered_signature_schemes", p.offered_signature_schemes},
            {"tls_versions", p.tls_versions},
            {"requires_sni", p.requires_sni},
            {"client_auth_enabled", p.client_auth_enabled}};
}

ProbeProfile probe_profile_from_json(const json& j)
{
    validate_or_throw("probe_profile", j, "probe profile");
    ProbeProfile p;
    p.profile_id = j.at("profile_id").get<std::string>();
    p.offered_groups = j.at("offered_groups").get<std::vector<std::string>>();
    p.offered_signature_schemes = j.at("offered_signature_schemes").get<std::vector<std::string>>();
    p.tls_versions = j.at("tls_versions").get<std::vector<std::string>>();
    p.requires_sni = j.at("requires_sni").get<bool>();
    p.client_auth_enabled = j.at("client_auth_enabled").get<bool>();
    return p;
}

ProbeProfile classical_profile(bool with_tls12)
{
    ProbeProfile p;
    p.profile_id = "classical";
    p.offered_groups = {"X25519"};
    p.offered_signature_schemes = {"ecdsa_secp256r1_sha256", "rsa_pss_rsae_sha256", "rsa_pkcs1_sha256"};
    p.tls_versions = {"TLS1.3"};
    if (with_tls12) {
        p.tls_versions.push_back("TLS1.2");
    }
    return p;
}

ProbeProfile hybrid_profile(bool with_tls12)
{
    auto p = classical_profile(with_tls12);
    p.profile_id = "hybrid";
    p.offered_groups = {"X25519MLKEM768", "X25519"};
    return p;
}

void validate_profile(const ProbeProfile& p, const registry::Bundle& reg)
{
    if (p.profile_id.empty()) {
        throw Error("invalid_profile", "profile_id is empty");
    }
    if (p.offered_groups.empty() || p.tls_versions.empty() || p.offered_signature_schemes.empty()) {
        throw Error("invalid_profile", p.profile_id + ": groups, signature schemes and versions must be non-empty");
    }
    resolve_offer(p, reg);
}

json to_json(const Target& t)
{
    return {{"host", t.host}, {"port", t.port}, {"sni", t.sni ? json(*t.sni) : json(nullptr)},
            {"tier", std::string(to_string(t.tier))}};
}

Target target_from_json(const json& j)
{
    Target t;
    t.host = j.at("host").get<std::string>();
    t.port = j.at("port").get<std::uint16_t>();
    if (j.contains("sni") && !j["sni"].is_null()) {
        t.sni = j["sni"].get<std::string>();
    }
    t.tier = tier_from_string(j.at("tier").get<std::string>());
    return t;
}

bool is_ip_literal(std::string_view host)
{
    std::string h(host);
    if (h.size() >= 2 && h.front() == '[' && h.back() == ']') {
        h = h.substr(1, h.size() - 2);
    }
    unsigned char buf[16];
    return inet_pton(AF_INET, h.c_str(), buf) == 1 || inet_pton(AF_INET6, h.c_str(), buf) == 1;
}

std::vector<std::string> guardrail_violations(const Target& t, const ProbeProfile& p)
{
    std::vector<std::string> v;
    bool hostname = !is_ip_literal(t.host);
    if ((hostname || p.requires_sni) && (!t.sni || t.sni->empty()) && (hostname || t.tier == Tier::public_blind)) {
        v.push_back("missing_sni");
    }
    if (p.client_auth_enabled && t.tier == Tier::public_blind) {
        v.push_back("client_auth_on_public");
    }
    return v;
}

json to_json(const ProbeResult& r)
{
    const auto& o = r.outcome;
    json outcome{{"kind", std::string(to_string(o.kind))}};
    if (o.kind == ProbeOutcome::Kind::negotiated) {
        outcome["group"] = o.group ? json(*o.group) : json(nullptr);
        outcome["group_codepoint"] = o.group_codepoint ? json(*o.group_codepoint) : json(nullptr);
        outcome["version"] = o.version;
        outcome["cipher_suite"] = o.cipher_suite;
        outcome["hrr_seen"] = o.hrr_seen;
        outcome["server_requested_client_auth"] =
            o.server_requested_client_auth ? json(*o.server_requested_client_auth) : json(nullptr);
    } else {
        outcome["reason"] = o.reason;
    }
    return {{"surface", std::string(to_string(Surface::active))},
            {"profile_id", r.profile_id},
            {"target", to_json(r.target)},
            {"timestamp", r.timestamp},
            {"outcome", outcome},
            {"retries_used", r.retries_used},
            {"linkage", std::string(to_string(r.linkage))},
            {"offered_groups", r.offered_groups}};
}

ProbeResult probe_result_from_json(const json& j)
{
    validate_or_throw("probe_result", j, "probe result");
    ProbeResult r;
    r.profile_id = j.at("profile_id").get<std::string>();
    r.target = target_from_json(j.at("target"));
    r.timestamp = j.at("timestamp").get<double>();
    r.retries_used = j.at("retries_used").get<int>();
    r.linkage = linkage_from_string(j.at("linkage").get<std::string>());
    r.offered_groups = j.at("offered_groups").get<std::vector<std::string>>();
    const auto& o = j.at("outcome");
    r.outcome.kind = outcome_kind_from_string(o.at("kind").get<std::string>());
    if (r.outcome.kind == ProbeOutcome::Kind::negotiated) {
        if (!o.at("group").is_null()) {
            r.outcome.group = o["group"].get<std::string>();
        }
        if (!o.at("group_codepoint").is_null()) {
            r.outcome.group_codepoint = o["group_codepoint"].get<std::uint16_t>();
        }
        r.outcome.version = o.at("version").get<std::string>();
        r.outcome.cipher_suite = o.at("cipher_suite").get<std::string>();
        r.outcome.hrr_seen = o.at("hrr_seen").get<bool>();
        if (!o.at("server_requested_client_auth").is_null()) {
            r.outcome.server_requested_client_auth = o["server_requested_client_auth"].get<bool>();
        }
    } else {
        r.outcome.reason = o.at("reason").get<std::string>();
    }
    return r;
}

ProbeContext default_probe_context()
{
    ProbeContext ctx;
    ctx.now = [] {
        using namespace std::chrono;
        return duration<double>(system_clock::now().time_since_epoch()).count();
    };
    ctx.sleep = [](double s) { std::this_thread::sleep_for(std::chrono::duration<double>(s)); };
    ctx.seed = static_cast<std::uint64_t>(std::random_device{}());
    return ctx;
}

ProbeResult run_probe(const Target& target, const ProbeProfile& profile, Connector& connector,
                      const ProbeBudget& budget, const ProbeContext& ctx, const registry::Bundle& reg)
{
    auto violations = guardrail_violations(target, profile);
    if (!violations.empty()) {
        std::string list;
        for (const auto& v : violations) {
            list += (list.empty() ? "" : ",") + v;
        }
        throw Error("guardrail_violation", target.host + " / " + profile.profile_id + ": " + list);
    }
    if (budget.retries < 0 || budget.retries > 1) {
        throw Error("invalid_budget", "retries must be 0 or 1");
    }
    auto offer = resolve_offer(profile, reg);
    if (offer.groups.empty() || offer.versions.empty()) {
        throw Error("invalid_profile", profile.profile_id + ": empty offer");
    }

    ProbeResult r;
    r.profile_id = profile.profile_id;
    r.target = target;
    r.linkage = ctx.linkage;
    for (auto g : offer.groups) {
        r.offered_groups.push_back(group_label(reg, g));
    }
    std::mt19937_64 rng(ctx.seed);
    for (int i = 0;; ++i) {
        r.timestamp = ctx.now();
        auto a = attempt_once(target, offer, connector, budget, ctx, reg, rng);
        r.outcome = a.outcome;
        r.retries_used = i;
        if (!a.retryable || i >= budget.retries) {
            break;
        }
        ctx.sleep(budget.backoff_s);
    }
    return r;
}

}  // namespace pqobs::surfaces
