// SPDX-License-Identifier: Apache-2.0
// Randomized wire-config generation and field-recovery checks shared by the
// codec unit tests and the acceptance runner. The oracle for every check is
// the generating WireConfig, never decoder output.
#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "pqobs/wire/constants.hpp"
#include "pqobs/wire/decoder.hpp"
#include "pqobs/wire/encoder.hpp"

namespace pqobs::testing {

inline std::vector<Bytes> random_chain(std::mt19937_64& rng, std::size_t depth)
{
    std::vector<Bytes> chain;
    std::uniform_int_distribution<std::size_t> size(300, 1400);
    for (std::size_t i = 0; i < depth; ++i) {
        auto cert = wire::random_bytes(rng, size(rng));
        cert[0] = 0x30;
        chain.push_back(std::move(cert));
    }
    return chain;
}

template <typename T>
std::vector<T> random_subset(std::mt19937_64& rng, const std::vector<T>& pool, std::size_t min_size)
{
    std::vector<T> out;
    while (out.size() < min_size) {
        out.clear();
        for (const auto& v : pool) {
            if (rng() % 2 == 0) {
                out.push_back(v);
            }
        }
    }
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

// Draws a valid config from the benchmark's scenario space: TLS 1.2
// (static RSA / ECDHE, optional mTLS) or TLS 1.3 (classical, hybrid or PQ
// groups, optional HRR, PSK modes, mTLS).
inline wire::WireConfig random_wire_config(std::mt19937_64& rng, std::size_t index)
{
    using namespace wire;
    WireConfig c;
    c.artifact_id = "random-" + std::to_string(index);
    c.start_time = 1735689600.0 + static_cast<double>(rng() % 100000);
    c.client.sni = rng() % 4 == 0 ? std::optional<std::string>() : std::optional<std::string>("host" + std::to_string(rng() % 1000) + ".example.test");
    c.client.signature_schemes = random_subset<std::uint16_t>(
        rng, {sig::rsa_pss_rsae_sha256, sig::ecdsa_secp256r1_sha256, sig::rsa_pkcs1_sha256, sig::ed25519}, 1);
    c.app_data_records = 1 + rng() % 2;
    bool tls13 = rng() % 3 != 0;
    if (!tls13) {
        c.version = version::tls12;
        c.client.cipher_suites = random_subset<std::uint16_t>(rng, {0x009c, 0xc02f, 0xc02b, 0xc030}, 1);
        c.cipher_suite = c.client.cipher_suites[rng() % c.client.cipher_suites.size()];
        c.client.groups = random_subset<std::uint16_t>(rng, {group::x25519, group::secp256r1, group::secp384r1}, 1);
        if (cipher_suite_info(c.cipher_suite)->kx != KeyExchange::static_rsa) {
            c.selected_group = c.client.groups[rng() % c.client.groups.size()];
        }
        c.server_chain = random_chain(rng, 1 + rng() % 3);
        if (rng() % 3 == 0) {
            c.request_client_cert = true;
            c.client_chain = random_chain(rng, 1);
        }
        return c;
    }
    c.version = version::tls13;
    c.client.versions = rng() % 2 == 0 ? std::vector<std::uint16_t>{version::tls13}
                                       : std::vector<std::uint16_t>{version::tls13, version::tls12};
    c.client.cipher_suites = random_subset<std::uint16_t>(rng, {0x1301, 0x1302, 0x1303}, 1);
    c.cipher_suite = c.client.cipher_suites[rng() % c.client.cipher_suites.size()];
    c.client.groups = random_subset<std::uint16_t>(
        rng,
        {group::x25519, group::secp256r1, group::x25519_mlkem768, group::secp256r1_mlkem768, group::mlkem768,
         group::x25519_kyber768_draft00},
        1);
    auto mode = rng() % 6;
    if (mode == 0) {
        c.client.offer_psk = true;
        c.client.psk_modes = {psk_mode::psk_ke, psk_mode::psk_dhe_ke};
        c.psk = PskMode::psk_ke;
        c.client.key_share_groups = {c.client.groups.front()};
        return c;
    }
    if (mode == 1) {
        c.client.offer_psk = true;
        c.client.psk_modes = {psk_mode::psk_dhe_ke};
        c.psk = PskMode::psk_dhe_ke;
    } else {
        c.server_chain = random_chain(rng, 1 + rng() % 3);
        if (rng() % 4 == 0) {
            c.request_client_cert = true;
            c.client_chain = random_chain(rng, 1);
        }
    }
    if (mode == 2 && c.client.groups.size() >= 2) {
        c.client.key_share_groups = {c.client.groups.front()};
        c.hrr_group = c.client.groups.back();
        c.selected_group = c.hrr_group;
        c.hrr_second_leg = rng() % 3 != 0;
        return c;
    }
    c.client.key_share_groups = random_subset(rng, c.client.groups, 1);
    c.selected_group = c.client.key_share_groups[rng() % c.client.key_share_groups.size()];
    return c;
}

// Compares every configured field against the decoded view; returns one
// message per mismatch.
inline std::vector<std::string> field_recovery_mismatches(const wire::WireConfig& c, const wire::HandshakeView& v)
{
    using namespace wire;
    std::vector<std::string> bad;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) {
            bad.push_back(c.artifact_id + ": " + what);
        }
    };
    bool hrr_incomplete = c.hrr_group && !c.hrr_second_leg;
    expect(v.completeness == (hrr_incomplete ? Completeness::truncated_post_serverhello : Completeness::complete),
           "completeness " + std::string(to_string(v.completeness)));
    expect(v.client_hello.has_value(), "client_hello present");
    if (!v.client_hello) {
        return bad;
    }
    const auto& ch = *v.client_hello;
    auto versions = c.client.versions.empty() ? std::vector<std::uint16_t>{version::tls12} : c.client.versions;
    expect(ch.offered_versions == versions, "offered_versions");
    expect(ch.offered_cipher_suites == c.client.cipher_suites, "offered_cipher_suites");
    expect(ch.offered_groups == c.client.groups, "offered_groups");
    expect(ch.key_share_groups == c.client.key_share_groups, "key_share_groups");
    expect(ch.signature_schemes == c.client.signature_schemes, "signature_schemes");
    expect(ch.sni == c.client.sni, "sni");
    expect(ch.psk_offered == c.client.offer_psk, "psk_offered");
    expect(!v.layout_flags.fragmented && !v.layout_flags.coalesced, "canonical layout flags");
    expect(v.server_hello.has_value(), "server_hello present");
    if (!v.server_hello) {
        return bad;
    }
    expect(v.server_hello->is_hrr == c.hrr_group.has_value(), "is_hrr");
    if (c.hrr_group) {
        expect(v.server_hello->key_share_group == c.hrr_group, "hrr requested group");
        expect(v.second_client_hello.has_value() &&
                   v.second_client_hello->key_share_groups == std::vector<std::uint16_t>{*c.hrr_group},
               "second ClientHello key share");
        expect(v.second_server_hello.has_value() == c.hrr_second_leg, "second ServerHello presence");
    }
    const auto* sh = v.final_server_hello();
    if (sh == nullptr) {
        expect(hrr_incomplete, "final ServerHello");
        return bad;
    }
    expect(sh->selected_version == c.version, "selected_version");
    expect(sh->supported_versions_present == (c.version == version::tls13), "supported_versions in ServerHello");
    expect(sh->selected_cipher_suite == c.cipher_suite, "selected_cipher_suite");
    expect(sh->psk_selected == (c.psk != PskMode::none), "psk_selected");
    if (c.version == version::tls13) {
        expect(sh->key_share_group == c.selected_group, "key_share_group");
        expect(!v.tls12_certificate_chain.has_value(), "no plaintext chain in TLS 1.3");
    } else {
        expect(!sh->key_share_group.has_value(), "no key_share in TLS 1.2 ServerHello");
        expect(v.tls12_server_key_exchange_group == c.selected_group, "ServerKeyExchange group");
        expect(v.tls12_certificate_chain == std::optional<std::vector<Bytes>>(c.server_chain), "tls12 chain");
        expect(v.tls12_certificate_request_seen == c.request_client_cert, "CertificateRequest visibility");
        if (c.request_client_cert) {
            expect(v.tls12_client_certificate_chain == std::optional<std::vector<Bytes>>(c.client_chain),
                   "client chain");
        }
    }
    return bad;
}

}  // namespace pqobs::testing
