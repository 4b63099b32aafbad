// SPDX-License-Identifier: Apache-2.0
#include "pqobs/wire/encoder.hpp"

#include <algorithm>

#include "pqobs/common/error.hpp"
#include "pqobs/wire/constants.hpp"
#include "pqobs/wire/messages.hpp"

namespace pqobs::wire {

namespace {

bool contains(const std::vector<std::uint16_t>& v, std::uint16_t x)
{
    return std::find(v.begin(), v.end(), x) != v.end();
}

[[noreturn]] void reject(const WireConfig& c, const std::string& why)
{
    throw Error("encode_error", c.artifact_id + ": " + why);
}

// Length of a TLS 1.3 encrypted record carrying `plain` bytes of handshake
// data (content type byte + 16-byte AEAD tag).
constexpr std::size_t sealed(std::size_t plain) { return plain + 17; }

class FlowBuilder {
public:
    FlowBuilder(const WireConfig& c, std::uint64_t seed) : cfg_(c), rng_(seed ^ 0x9e3779b97f4a7c15ULL), t_(c.start_time)
    {
    }

    std::mt19937_64& rng() { return rng_; }

    void send(Direction d, Bytes data)
    {
        if (!flows_.empty() && flows_.back().direction == d) {
            auto& back = flows_.back().data;
            back.insert(back.end(), data.begin(), data.end());
            return;
        }
        t_ += cfg_.rtt / 2;
        flows_.push_back({d, t_, std::move(data)});
    }

    void handshake(Direction d, std::uint8_t type, ByteView body, std::uint16_t record_version = version::tls12)
    {
        send(d, frame_records(content_type::handshake, record_version, handshake_message(type, body)));
    }

    void ccs(Direction d)
    {
        Bytes payload{1};
        send(d, frame_records(content_type::change_cipher_spec, version::tls12, payload));
    }

    void opaque(Direction d, std::uint8_t type, std::size_t n)
    {
        send(d, frame_records(type, version::tls12, random_bytes(rng_, n), max_record_payload));
    }

    Transcript finish()
    {
        Transcript t;
        t.flows = std::move(flows_);
        t.artifact_id = cfg_.artifact_id;
        t.declared_truncated = false;
        t.refresh_digest();
        return t;
    }

private:
    const WireConfig& cfg_;
    std::mt19937_64 rng_;
    double t_;
    std::vector<Flow> flows_;
};

ClientHelloParams client_hello_params(const WireConfig& c, std::mt19937_64& rng)
{
    ClientHelloParams p;
    p.random = random_bytes(rng, 32);
    bool offers13 = contains(c.client.versions, version::tls13);
    if (offers13) {
        p.session_id = random_bytes(rng, 32);
    }
    p.cipher_suites = c.client.cipher_suites;
    p.sni = c.client.sni;
    p.supported_versions = c.client.versions;
    p.supported_groups = c.client.groups;
    p.signature_schemes = c.client.signature_schemes;
    if (offers13) {
        std::vector<KeyShareEntry> shares;
        for (auto g : c.client.key_share_groups) {
            shares.push_back({g, random_key_share(rng, g, false)});
        }
        p.key_shares = std::move(shares);
    }
    if (c.client.offer_psk) {
        p.psk_modes = c.client.psk_modes.empty() ? std::vector<std::uint8_t>{psk_mode::psk_dhe_ke} : c.client.psk_modes;
        p.psk = PskOffer{random_bytes(rng, 32), static_cast<std::uint32_t>(rng()), random_bytes(rng, 32)};
    }
    return p;
}

std::size_t chain_message_size(const std::vector<Bytes>& chain)
{
    std::size_t n = 4 + 1 + 3;  // header, request context, list length
    for (const auto& cert : chain) {
        n += 3 + cert.size() + 2;
    }
    return n;
}

void encode_tls13(const WireConfig& c, FlowBuilder& b)
{
    auto& rng = b.rng();
    auto ch = client_hello_params(c, rng);
    b.handshake(Direction::client_to_server, hs::client_hello, build_client_hello_body(ch), version::tls10);

    ServerHelloParams sh;
    sh.session_id = ch.session_id;
    sh.cipher_suite = c.cipher_suite;
    sh.supported_version = version::tls13;
    bool ccs_sent_by_server = false;
    if (c.hrr_group) {
        ServerHelloParams hrr = sh;
        hrr.random.assign(hello_retry_request_random.begin(), hello_retry_request_random.end());
        hrr.hrr_selected_group = *c.hrr_group;
        b.handshake(Direction::server_to_client, hs::server_hello, build_server_hello_body(hrr));
        b.ccs(Direction::server_to_client);
        ccs_sent_by_server = true;

        ch.key_shares = std::vector<KeyShareEntry>{{*c.hrr_group, random_key_share(rng, *c.hrr_group, false)}};
        if (ch.psk) {
            ch.psk->binder = random_bytes(rng, 32);
        }
        b.handshake(Direction::client_to_server, hs::client_hello, build_client_hello_body(ch));
        if (!c.hrr_second_leg) {
            return;
        }
    }

    sh.random = random_bytes(rng, 32);
    if (c.selected_group) {
        sh.key_share = KeyShareEntry{*c.selected_group, random_key_share(rng, *c.selected_group, true)};
    }
    if (c.psk != PskMode::none) {
        sh.selected_psk_identity = 0;
    }
    b.handshake(Direction::server_to_client, hs::server_hello, build_server_hello_body(sh));
    if (!ccs_sent_by_server) {
        b.ccs(Direction::server_to_client);
    }
    // EncryptedExtensions, [CertificateRequest], [Certificate, CertificateVerify], Finished
    b.opaque(Direction::server_to_client, content_type::application_data, sealed(4 + 2 + 6));
    if (c.request_client_cert) {
        b.opaque(Direction::server_to_client, content_type::application_data, sealed(4 + 1 + 2 + 24));
    }
    if (c.psk == PskMode::none) {
        b.opaque(Direction::server_to_client, content_type::application_data, sealed(chain_message_size(c.server_chain)));
        b.opaque(Direction::server_to_client, content_type::application_data, sealed(4 + 4 + 72));
    }
    b.opaque(Direction::server_to_client, content_type::application_data, sealed(4 + 32));

    b.ccs(Direction::client_to_server);
    if (c.request_client_cert) {
        b.opaque(Direction::client_to_server, content_type::application_data, sealed(chain_message_size(c.client_chain)));
        b.opaque(Direction::client_to_server, content_type::application_data, sealed(4 + 4 + 72));
    }
    b.opaque(Direction::client_to_server, content_type::application_data, sealed(4 + 32));
    for (std::size_t i = 0; i < c.app_data_records; ++i) {
        b.opaque(Direction::client_to_server, content_type::application_data, 17 + 64);
    }
    // NewSessionTicket then the response
    b.opaque(Direction::server_to_client, content_type::application_data, sealed(4 + 4 + 4 + 9 + 2 + 96 + 2));
    for (std::size_t i = 0; i < c.app_data_records; ++i) {
        b.opaque(Direction::server_to_client, content_type::application_data, 17 + 256);
    }
}

void encode_tls12(const WireConfig& c, FlowBuilder& b)
{
    auto& rng = b.rng();
    const auto* suite = cipher_suite_info(c.cipher_suite);
    auto ch = client_hello_params(c, rng);
    b.handshake(Direction::client_to_server, hs::client_hello, build_client_hello_body(ch), version::tls10);

    ServerHelloParams sh;
    sh.random = random_bytes(rng, 32);
    sh.session_id = random_bytes(rng, 32);
    sh.cipher_suite = c.cipher_suite;
    sh.tls12_extensions = true;
    b.handshake(Direction::server_to_client, hs::server_hello, build_server_hello_body(sh));
    b.handshake(Direction::server_to_client, hs::certificate, build_tls12_certificate_body(c.server_chain));
    if (suite->kx != KeyExchange::static_rsa) {
        bool ecdsa = suite->kx == KeyExchange::ecdhe_ecdsa;
        auto point = random_key_share(rng, *c.selected_group, true);
        auto signature = random_bytes(rng, ecdsa ? 71 : 256);
        b.handshake(Direction::server_to_client, hs::server_key_exchange,
                    build_tls12_server_key_exchange_body(*c.selected_group, point,
                                                         ecdsa ? sig::ecdsa_secp256r1_sha256 : sig::rsa_pss_rsae_sha256,
                                                         signature));
    }
    if (c.request_client_cert) {
        b.handshake(Direction::server_to_client, hs::certificate_request,
                    build_tls12_certificate_request_body({sig::ecdsa_secp256r1_sha256, sig::rsa_pss_rsae_sha256}));
    }
    b.handshake(Direction::server_to_client, hs::server_hello_done, Bytes{});

    if (c.request_client_cert) {
        b.handshake(Direction::client_to_server, hs::certificate, build_tls12_certificate_body(c.client_chain));
    }
    if (suite->kx == KeyExchange::static_rsa) {
        ByteWriter w;
        auto mark = w.open_len(2);
        w.bytes(random_bytes(rng, 256));
        w.close_len(mark);
        b.handshake(Direction::client_to_server, hs::client_key_exchange, w.data());
    } else {
        ByteWriter w;
        auto mark = w.open_len(1);
        w.bytes(random_key_share(rng, *c.selected_group, false));
        w.close_len(mark);
        b.handshake(Direction::client_to_server, hs::client_key_exchange, w.data());
    }
    if (c.request_client_cert) {
        ByteWriter w;
        w.u16(sig::ecdsa_secp256r1_sha256);
        auto mark = w.open_len(2);
        w.bytes(random_bytes(rng, 71));
        w.close_len(mark);
        b.handshake(Direction::client_to_server, hs::certificate_verify, w.data());
    }
    b.ccs(Direction::client_to_server);
    b.opaque(Direction::client_to_server, content_type::handshake, 40);
    b.ccs(Direction::server_to_client);
    b.opaque(Direction::server_to_client, content_type::handshake, 40);
    for (std::size_t i = 0; i < c.app_data_records; ++i) {
        b.opaque(Direction::client_to_server, content_type::application_data, 8 + 64 + 16);
        b.opaque(Direction::server_to_client, content_type::application_data, 8 + 256 + 16);
    }
}

json u16_list(const std::vector<std::uint16_t>& v) { return json(v); }

}  // namespace

std::string_view to_string(PskMode m)
{
    switch (m) {
    case PskMode::none:
        return "none";
    case PskMode::psk_dhe_ke:
        return "psk_dhe_ke";
    case PskMode::psk_ke:
        return "psk_ke";
    }
    return "none";
}

PskMode psk_mode_from_string(std::string_view s)
{
    for (auto m : {PskMode::none, PskMode::psk_dhe_ke, PskMode::psk_ke}) {
        if (to_string(m) == s) {
            return m;
        }
    }
    throw Error("schema_violation", "unknown PSK mode '" + std::string(s) + "'");
}

Bytes random_bytes(std::mt19937_64& rng, std::size_t n)
{
    Bytes out(n);
    for (std::size_t i = 0; i < n; i += 8) {
        auto v = rng();
        for (std::size_t k = 0; k < 8 && i + k < n; ++k) {
            out[i + k] = static_cast<std::uint8_t>(v >> (8 * k));
        }
    }
    return out;
}

Bytes random_key_share(std::mt19937_64& rng, std::uint16_t group, bool from_server)
{
    auto n = key_share_length(group, from_server);
    if (n == 0) {
        n = 32;
    }
    auto out = random_bytes(rng, n);
    // Uncompressed EC points start with 0x04.
    if (group == group::secp256r1 || group == group::secp384r1 || group == group::secp521r1 ||
        group == group::secp256r1_mlkem768 || group == group::secp384r1_mlkem1024 ||
        group == group::secp256r1_kyber768_draft00) {
        out[0] = 4;
    }
    return out;
}

void validate_wire_config(const WireConfig& c)
{
    const auto* suite = cipher_suite_info(c.cipher_suite);
    if (suite == nullptr) {
        reject(c, "unsupported cipher suite " + std::to_string(c.cipher_suite));
    }
    if (!contains(c.client.cipher_suites, c.cipher_suite)) {
        reject(c, "selected cipher suite was not offered");
    }
    bool offers13 = contains(c.client.versions, version::tls13);
    if (!c.client.key_share_groups.empty() && !offers13) {
        reject(c, "key_share offered without TLS 1.3 in supported_versions");
    }
    for (auto g : c.client.key_share_groups) {
        if (!contains(c.client.groups, g)) {
            reject(c, "key_share group not listed in supported_groups");
        }
    }
    if (c.client.offer_psk && !offers13) {
        reject(c, "PSK offer requires TLS 1.3");
    }
    if (c.request_client_cert && c.client_chain.empty()) {
        reject(c, "client certificate requested but no client chain configured");
    }
    if (c.version == version::tls12) {
        if (suite->kx == KeyExchange::tls13) {
            reject(c, "TLS 1.3 cipher suite in a TLS 1.2 session");
        }
        if (c.hrr_group) {
            reject(c, "HelloRetryRequest in a TLS 1.2 session");
        }
        if (c.psk != PskMode::none) {
            reject(c, "PSK resumption in a TLS 1.2 session");
        }
        if (!c.client.versions.empty() && !contains(c.client.versions, version::tls12)) {
            reject(c, "client does not offer TLS 1.2");
        }
        if (suite->kx == KeyExchange::static_rsa) {
            if (c.selected_group) {
                reject(c, "static RSA sessions have no key-exchange group");
            }
        } else {
            if (!c.selected_group || !contains(c.client.groups, *c.selected_group)) {
                reject(c, "ECDHE session needs a selected group the client offered");
            }
            if (*c.selected_group != group::x25519 && *c.selected_group != group::secp256r1 &&
                *c.selected_group != group::secp384r1) {
                reject(c, "TLS 1.2 ECDHE supports only classical curves");
            }
        }
        if (c.server_chain.empty()) {
            reject(c, "TLS 1.2 session needs a server certificate chain");
        }
        return;
    }
    if (c.version != version::tls13) {
        reject(c, "only TLS 1.2 and TLS 1.3 sessions are supported");
    }
    if (!offers13) {
        reject(c, "TLS 1.3 session but the client does not offer TLS 1.3");
    }
    if (suite->kx != KeyExchange::tls13) {
        reject(c, "TLS 1.2 cipher suite in a TLS 1.3 session");
    }
    if (c.psk != PskMode::none && !c.client.offer_psk) {
        reject(c, "PSK accepted but not offered");
    }
    if (c.psk != PskMode::none && c.request_client_cert) {
        reject(c, "certificate-based client authentication with PSK resumption");
    }
    if (c.psk == PskMode::none && c.server_chain.empty()) {
        reject(c, "full handshake needs a server certificate chain");
    }
    if (c.psk == PskMode::psk_ke) {
        if (c.selected_group || c.hrr_group) {
            reject(c, "psk_ke sessions carry no key share");
        }
        return;
    }
    if (!c.selected_group || !contains(c.client.groups, *c.selected_group)) {
        reject(c, "selected group must be one the client offered");
    }
    if (c.hrr_group) {
        if (*c.hrr_group != *c.selected_group) {
            reject(c, "HRR group must equal the finally selected group");
        }
        if (contains(c.client.key_share_groups, *c.hrr_group)) {
            reject(c, "HRR requested a group the client already sent a share for");
        }
    } else if (!contains(c.client.key_share_groups, *c.selected_group)) {
        reject(c, "selected group has no client key share and no HRR is configured");
    }
}

Transcript encode_scenario_transcript(const WireConfig& c, std::uint64_t seed)
{
    validate_wire_config(c);
    FlowBuilder b(c, seed);
    if (c.version == version::tls13) {
        encode_tls13(c, b);
    } else {
        encode_tls12(c, b);
    }
    return b.finish();
}

json to_json(const WireConfig& c)
{
    json server_chain = json::array();
    for (const auto& cert : c.server_chain) {
        server_chain.push_back(to_hex(cert));
    }
    json client_chain = json::array();
    for (const auto& cert : c.client_chain) {
        client_chain.push_back(to_hex(cert));
    }
    json client{{"versions", u16_list(c.client.versions)},
                {"cipher_suites", u16_list(c.client.cipher_suites)},
                {"groups", u16_list(c.client.groups)},
                {"key_share_groups", u16_list(c.client.key_share_groups)},
                {"signature_schemes", u16_list(c.client.signature_schemes)},
                {"offer_psk", c.client.offer_psk},
                {"psk_modes", c.client.psk_modes}};
    client["sni"] = c.client.sni ? json(*c.client.sni) : json(nullptr);
    json j{{"artifact_id", c.artifact_id},
           {"version", c.version},
           {"client", client},
           {"cipher_suite", c.cipher_suite},
           {"hrr_second_leg", c.hrr_second_leg},
           {"server_chain_hex", server_chain},
           {"request_client_cert", c.request_client_cert},
           {"client_chain_hex", client_chain},
           {"psk", to_string(c.psk)},
           {"start_time", c.start_time},
           {"rtt", c.rtt},
           {"app_data_records", c.app_data_records}};
    j["selected_group"] = c.selected_group ? json(*c.selected_group) : json(nullptr);
    j["hrr_group"] = c.hrr_group ? json(*c.hrr_group) : json(nullptr);
    return j;
}

WireConfig wire_config_from_json(const json& j)
{
    WireConfig c;
    c.artifact_id = j.at("artifact_id").get<std::string>();
    c.version = j.at("version").get<std::uint16_t>();
    const auto& cl = j.at("client");
    c.client.versions = cl.at("versions").get<std::vector<std::uint16_t>>();
    c.client.cipher_suites = cl.at("cipher_suites").get<std::vector<std::uint16_t>>();
    c.client.groups = cl.at("groups").get<std::vector<std::uint16_t>>();
    c.client.key_share_groups = cl.at("key_share_groups").get<std::vector<std::uint16_t>>();
    c.client.signature_schemes = cl.at("signature_schemes").get<std::vector<std::uint16_t>>();
    c.client.offer_psk = cl.at("offer_psk").get<bool>();
    c.client.psk_modes = cl.at("psk_modes").get<std::vector<std::uint8_t>>();
    if (!cl.at("sni").is_null()) {
        c.client.sni = cl["sni"].get<std::string>();
    }
    c.cipher_suite = j.at("cipher_suite").get<std::uint16_t>();
    if (!j.at("selected_group").is_null()) {
        c.selected_group = j["selected_group"].get<std::uint16_t>();
    }
    if (!j.at("hrr_group").is_null()) {
        c.hrr_group = j["hrr_group"].get<std::uint16_t>();
    }
    c.hrr_second_leg = j.at("hrr_second_leg").get<bool>();
    for (const auto& h : j.at("server_chain_hex")) {
        c.server_chain.push_back(from_hex(h.get<std::string>()));
    }
    c.request_client_cert = j.at("request_client_cert").get<bool>();
    for (const auto& h : j.at("client_chain_hex")) {
        c.client_chain.push_back(from_hex(h.get<std::string>()));
    }
    c.psk = psk_mode_from_string(j.at("psk").get<std::string>());
    c.start_time = j.at("start_time").get<double>();
    c.rtt = j.at("rtt").get<double>();
    c.app_data_records = j.at("app_data_records").get<std::size_t>();
    return c;
}

}  // namespace pqobs::wire
