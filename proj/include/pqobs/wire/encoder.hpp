// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pqobs/common/bytes.hpp"
#include "pqobs/wire/transcript.hpp"

namespace pqobs::wire {

enum class PskMode { none, psk_dhe_ke, psk_ke };

std::string_view to_string(PskMode m);
PskMode psk_mode_from_string(std::string_view s);

struct ClientOffer {
    std::vector<std::uint16_t> versions;  // supported_versions; empty means a TLS 1.2-only hello
    std::vector<std::uint16_t> cipher_suites;
    std::vector<std::uint16_t> groups;
    std::vector<std::uint16_t> key_share_groups;
    std::vector<std::uint16_t> signature_schemes;
    std::optional<std::string> sni;
    bool offer_psk = false;
    std::vector<std::uint8_t> psk_modes;

    bool operator==(const ClientOffer&) const = default;
};

// Everything the encoder needs to synthesize one captured session. The
// benchmark derives both this config and its ground truth from one scenario
// spec; nothing here is read back from decoded bytes.
struct WireConfig {
    std::string artifact_id = "session";
    std::uint16_t version = 0x0304;
    ClientOffer client;
    std::uint16_t cipher_suite = 0x1301;
    // Key-share group (TLS 1.3) or ECDHE curve (TLS 1.2). Absent for static
    // RSA and psk_ke sessions.
    std::optional<std::uint16_t> selected_group;
    // TLS 1.3: the server first answers with an HRR for this group.
    std::optional<std::uint16_t> hrr_group;
    // When false, the capture ends after the retried ClientHello.
    bool hrr_second_leg = true;
    std::vector<Bytes> server_chain;
    bool request_client_cert = false;
    std::vector<Bytes> client_chain;
    PskMode psk = PskMode::none;
    double start_time = 1735689600.0;  // 2025-01-01T00:00:00Z
    double rtt = 0.02;
    std::size_t app_data_records = 1;

    bool operator==(const WireConfig&) const = default;
};

nlohmann::json to_json(const WireConfig& c);
WireConfig wire_config_from_json(const nlohmann::json& j);

// Throws pqobs::Error(encode_error) for combinations outside the supported
// scenario space (key_share without TLS 1.3, HRR or PSK in TLS 1.2, ...).
void validate_wire_config(const WireConfig& c);

// Deterministic in (config, seed): random fields come from a seeded
// mt19937_64, so equal inputs give byte-identical transcripts.
Transcript encode_scenario_transcript(const WireConfig& c, std::uint64_t seed);

// Helpers shared with the probe client and the emulated endpoint.
Bytes random_bytes(std::mt19937_64& rng, std::size_t n);
Bytes random_key_share(std::mt19937_64& rng, std::uint16_t group, bool from_server);

}  // namespace pqobs::wire
