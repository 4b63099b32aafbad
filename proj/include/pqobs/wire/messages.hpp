// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pqobs/common/bytes.hpp"

namespace pqobs::wire {

struct KeyShareEntry {
    std::uint16_t group = 0;
    Bytes key_exchange;

    bool operator==(const KeyShareEntry&) const = default;
};

struct PskOffer {
    Bytes identity;
    std::uint32_t obfuscated_ticket_age = 0;
    Bytes binder;  // 32 bytes for SHA-256 suites
};

struct ClientHelloParams {
    std::uint16_t legacy_version = 0x0303;
    Bytes random;      // 32 bytes
    Bytes session_id;  // 0..32 bytes
    std::vector<std::uint16_t> cipher_suites;
    std::optional<std::string> sni;
    std::vector<std::uint16_t> supported_versions;  // empty: extension omitted
    std::vector<std::uint16_t> supported_groups;    // empty: extension omitted
    std::optional<std::vector<KeyShareEntry>> key_shares;
    std::vector<std::uint16_t> signature_schemes;
    std::vector<std::uint8_t> psk_modes;  // empty: extension omitted
    std::optional<PskOffer> psk;          // pre_shared_key, always last
    std::optional<Bytes> cookie;
};

struct ServerHelloParams {
    std::uint16_t legacy_version = 0x0303;
    Bytes random;
    Bytes session_id;
    std::uint16_t cipher_suite = 0;
    std::optional<std::uint16_t> supported_version;
    std::optional<KeyShareEntry> key_share;
    std::optional<std::uint16_t> hrr_selected_group;  // HRR form of key_share
    std::optional<std::uint16_t> selected_psk_identity;
    std::optional<Bytes> cookie;
    bool tls12_extensions = false;  // renegotiation_info + ec_point_formats
};

// Decoded ClientHello. offered_versions falls back to legacy_version when the
// supported_versions extension is absent.
struct ClientHelloInfo {
    std::uint16_t legacy_version = 0;
    Bytes random;
    Bytes session_id;
    std::vector<std::uint16_t> offered_versions;
    std::vector<std::uint16_t> offered_cipher_suites;
    std::vector<std::uint16_t> offered_groups;
    std::vector<std::uint16_t> key_share_groups;
    std::vector<std::uint16_t> signature_schemes;
    std::optional<std::string> sni;
    std::set<std::uint16_t> extensions_present;
    bool psk_offered = false;
    std::vector<std::uint8_t> psk_modes;
    bool cookie_present = false;

    bool operator==(const ClientHelloInfo&) const = default;
};

// Decoded ServerHello or HelloRetryRequest. selected_version is the
// supported_versions value when present, otherwise legacy_version; TLS 1.3 is
// never inferred from legacy_version alone.
struct ServerHelloInfo {
    std::uint16_t legacy_version = 0;
    Bytes random;
    Bytes session_id;
    std::uint16_t selected_version = 0;
    bool supported_versions_present = false;
    std::uint16_t selected_cipher_suite = 0;
    // For an HRR this is the group requested for the retry.
    std::optional<std::uint16_t> key_share_group;
    bool is_hrr = false;
    bool psk_selected = false;
    std::set<std::uint16_t> extensions_present;

    bool operator==(const ServerHelloInfo&) const = default;
};

Bytes build_client_hello_body(const ClientHelloParams& p);
Bytes build_server_hello_body(const ServerHelloParams& p);
Bytes build_tls12_certificate_body(const std::vector<Bytes>& chain);
Bytes build_tls12_server_key_exchange_body(std::uint16_t group, ByteView point, std::uint16_t sig_scheme,
                                           ByteView signature);
Bytes build_tls12_certificate_request_body(const std::vector<std::uint16_t>& sig_schemes);

// 4-byte handshake header + body.
Bytes handshake_message(std::uint8_t type, ByteView body);
// Frames payload into records of at most max_fragment bytes each.
Bytes frame_records(std::uint8_t content_type, std::uint16_t record_version, ByteView payload,
                    std::size_t max_fragment = 16384);

// Parsers return std::nullopt (and set err) on any structural violation.
std::optional<ClientHelloInfo> parse_client_hello(ByteView body, std::string& err);
std::optional<ServerHelloInfo> parse_server_hello(ByteView body, std::string& err);
std::optional<std::vector<Bytes>> parse_tls12_certificate(ByteView body, std::string& err);
// Named-curve ECDHE parameters only; returns the curve codepoint.
std::optional<std::uint16_t> parse_tls12_server_key_exchange_group(ByteView body, std::string& err);

}  // namespace pqobs::wire
