// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pqobs/common/bytes.hpp"
#include "pqobs/wire/messages.hpp"
#include "pqobs/wire/transcript.hpp"

namespace pqobs::wire {

enum class Completeness { complete, truncated_pre_serverhello, truncated_post_serverhello, malformed };

std::string_view to_string(Completeness c);
Completeness completeness_from_string(std::string_view s);

struct HandshakeMessage {
    Direction direction = Direction::client_to_server;
    std::uint8_t type = 0;
    Bytes body;

    bool operator==(const HandshakeMessage&) const = default;
};

struct LayoutFlags {
    bool fragmented = false;  // some handshake message spans more than one record
    bool coalesced = false;   // some record carries bytes of more than one message

    bool operator==(const LayoutFlags&) const = default;
};

struct AlertInfo {
    Direction direction = Direction::client_to_server;
    std::uint8_t level = 0;
    std::uint8_t description = 0;

    bool operator==(const AlertInfo&) const = default;
};

struct RecordCounts {
    std::size_t handshake_plaintext = 0;
    std::size_t handshake_encrypted = 0;  // TLS 1.2 records after ChangeCipherSpec
    std::size_t change_cipher_spec = 0;
    std::size_t alert = 0;
    std::size_t application_data = 0;
    // application_data records seen after the final ServerHello was decoded
    std::size_t application_data_after_server_hello = 0;

    bool operator==(const RecordCounts&) const = default;
};

struct HandshakeView {
    // Plaintext handshake messages in order of completion across both
    // directions.
    std::vector<HandshakeMessage> messages;
    std::optional<ClientHelloInfo> client_hello;
    std::optional<ClientHelloInfo> second_client_hello;  // sent in reply to an HRR
    std::optional<ServerHelloInfo> server_hello;         // first ServerHello (may be an HRR)
    std::optional<ServerHelloInfo> second_server_hello;  // ServerHello following an HRR
    std::optional<std::vector<Bytes>> tls12_certificate_chain;
    std::optional<std::vector<Bytes>> tls12_client_certificate_chain;
    std::optional<std::uint16_t> tls12_server_key_exchange_group;
    bool tls12_server_key_exchange_seen = false;
    bool tls12_certificate_request_seen = false;
    bool tls12_server_hello_done_seen = false;
    bool tls12_client_key_exchange_seen = false;
    std::vector<AlertInfo> alerts;
    RecordCounts client_records;
    RecordCounts server_records;
    Completeness completeness = Completeness::truncated_pre_serverhello;
    LayoutFlags layout_flags;
    std::vector<std::string> reasons;  // malformation / truncation trail

    // The ServerHello that actually negotiated the session, if any.
    const ServerHelloInfo* final_server_hello() const;
    bool hrr_seen() const { return server_hello && server_hello->is_hrr; }
};

// Total: never throws on content, whatever the bytes.
HandshakeView decode_transcript(const Transcript& t);

nlohmann::json to_json(const HandshakeView& v);

}  // namespace pqobs::wire
