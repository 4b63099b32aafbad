// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqobs/common/bytes.hpp"
#include "pqobs/surfaces/probe.hpp"
#include "pqobs/wire/messages.hpp"

namespace pqobs::bench {

enum class FailureMode { none, timeout, refuse, alert };

std::string_view to_string(FailureMode f);
FailureMode failure_mode_from_string(std::string_view s);

struct EmulatorConfig {
    std::vector<std::uint16_t> supported_groups;
    std::vector<std::uint16_t> tls_versions = {0x0304};
    std::vector<std::uint16_t> tls12_cipher_suites = {0xc02f};
    std::vector<Bytes> chain;  // leaf first
    bool mtls = false;
    double latency_s = 0.0;
    FailureMode failure = FailureMode::none;
    std::uint64_t seed = 1;

    bool operator==(const EmulatorConfig&) const = default;
};

nlohmann::json to_json(const EmulatorConfig& c);
EmulatorConfig emulator_config_from_json(const nlohmann::json& j);

struct HandshakeRecord {
    std::uint64_t connection_id = 0;
    std::vector<std::uint16_t> offered_groups;
    std::optional<std::uint16_t> selected_group;
    std::uint16_t version = 0;
    std::uint16_t cipher_suite = 0;
    bool hrr_sent = false;
    bool client_auth_requested = false;
    std::string outcome;  // served / alert / timeout

    bool operator==(const HandshakeRecord&) const = default;
};

nlohmann::json to_json(const HandshakeRecord& r);

// Server half of one connection: consumes client bytes, returns the bytes
// the server would send. Selection: the first group in the client's
// supported_groups order that the config supports; when the client sent no
// share for it a HelloRetryRequest asks for one.
class ServerSession {
public:
    ServerSession(const EmulatorConfig& cfg, std::uint64_t connection_id);

    Bytes on_client_bytes(ByteView data);
    bool closed() const { return closed_; }
    const std::optional<HandshakeRecord>& record() const { return record_; }

private:
    Bytes on_client_hello(ByteView body);
    Bytes alert(std::uint8_t description, const std::string& why);
    Bytes serve_tls13(const wire::ClientHelloInfo& ch, std::uint16_t group);
    Bytes serve_tls12(const wire::ClientHelloInfo& ch);

    const EmulatorConfig& cfg_;
    std::uint64_t connection_id_;
    Bytes record_buffer_;
    Bytes handshake_buffer_;
    bool hrr_sent_ = false;
    bool closed_ = false;
    std::optional<HandshakeRecord> record_;
    std::mt19937_64 rng_;
};

// Shared endpoint state: config plus the log of every served handshake.
class Emulator {
public:
    explicit Emulator(EmulatorConfig cfg);

    const EmulatorConfig& config() const { return cfg_; }
    std::unique_ptr<ServerSession> open_session();
    void log(const HandshakeRecord& r);
    std::vector<HandshakeRecord> handshake_log() const;

    // In-process transport: no sockets, latency compared against the
    // caller's timeout instead of slept.
    std::unique_ptr<surfaces::Connector> connector();

private:
    EmulatorConfig cfg_;
    mutable std::mutex mu_;
    std::uint64_t next_id_ = 1;
    std::vector<HandshakeRecord> log_;
};

}  // namespace pqobs::bench
