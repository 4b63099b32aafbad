// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pqobs/common/bytes.hpp"
#include "pqobs/registry/registry.hpp"
#include "pqobs/surfaces/types.hpp"

namespace pqobs::surfaces {

using nlohmann::json;

enum class Tier { public_blind, cooperative, emulated };

std::string_view to_string(Tier t);
Tier tier_from_string(std::string_view s);

struct ProbeProfile {
    std::string profile_id;
    std::vector<std::string> offered_groups;  // canonical names, preference order
    std::vector<std::string> offered_signature_schemes;
    std::vector<std::string> tls_versions;  // "TLS1.3", "TLS1.2"
    bool requires_sni = true;
    bool client_auth_enabled = false;

    bool operator==(const ProbeProfile&) const = default;
};

json to_json(const ProbeProfile& p);
ProbeProfile probe_profile_from_json(const json& j);

// The two profiles of the dual-probe design. Campaign profiles offer TLS 1.3
// only; the benchmark variants also offer TLS 1.2 so they can reach TLS 1.2
// emulated endpoints.
ProbeProfile classical_profile(bool with_tls12 = false);
ProbeProfile hybrid_profile(bool with_tls12 = false);

// Throws pqobs::Error(invalid_profile) for unknown names or an empty offer.
void validate_profile(const ProbeProfile& p, const registry::Bundle& reg);

struct Target {
    std::string host;
    std::uint16_t port = 443;
    std::optional<std::string> sni;
    Tier tier = Tier::emulated;

    bool operator==(const Target&) const = default;
};

json to_json(const Target& t);
Target target_from_json(const json& j);

bool is_ip_literal(std::string_view host);

struct ProbeBudget {
    double timeout_s = 10.0;
    int retries = 1;  // at most one
    double backoff_s = 30.0;

    bool operator==(const ProbeBudget&) const = default;
};

// Guardrails checked before any network activity. Returns rule names
// (missing_sni, client_auth_on_public); empty means the probe may run.
std::vector<std::string> guardrail_violations(const Target& t, const ProbeProfile& p);

// Byte transport to one endpoint. Implemented over TCP and by the in-process
// emulator.
class Connection {
public:
    enum class ReadStatus { data, closed, timeout, error };

    virtual ~Connection() = default;
    virtual bool send(ByteView data, std::string& err) = 0;
    virtual ReadStatus read(Bytes& out, double timeout_s, std::string& err) = 0;
    // Client-auth request as logged by the serving endpoint itself. Only the
    // emulator knows this; live endpoints return nullopt.
    virtual std::optional<bool> endpoint_reported_client_auth() const { return std::nullopt; }
};

class Connector {
public:
    enum class Status { ok, timeout, refused, error };
    struct Result {
        Status status = Status::error;
        std::unique_ptr<Connection> connection;
        std::string message;
    };

    virtual ~Connector() = default;
    virtual Result connect(const Target& t, double timeout_s) = 0;
};

struct ProbeOutcome {
    enum class Kind { negotiated, handshake_failure, timeout, transport_error };
    Kind kind = Kind::transport_error;
    std::optional<std::string> group;  // canonical name; absent for static RSA
    std::optional<std::uint16_t> group_codepoint;
    std::string version;
    std::string cipher_suite;
    std::optional<bool> server_requested_client_auth;
    bool hrr_seen = false;
    std::string reason;  // alert or error description for non-negotiated outcomes

    bool operator==(const ProbeOutcome&) const = default;
};

std::string_view to_string(ProbeOutcome::Kind k);
ProbeOutcome::Kind outcome_kind_from_string(std::string_view s);

struct ProbeResult {
    std::string profile_id;
    Target target;
    double timestamp = 0.0;
    ProbeOutcome outcome;
    int retries_used = 0;
    Linkage linkage = Linkage::unlinked;
    std::vector<std::string> offered_groups;

    bool negotiated() const { return outcome.kind == ProbeOutcome::Kind::negotiated; }
    bool operator==(const ProbeResult&) const = default;
};

json to_json(const ProbeResult& r);
ProbeResult probe_result_from_json(const json& j);

struct ProbeContext {
    std::function<double()> now;          // seconds since epoch
    std::function<void(double)> sleep;    // backoff wait
    std::uint64_t seed = 0;               // ClientHello randomness
    Linkage linkage = Linkage::unlinked;  // stamped on the result
};

// Real wall clock and real sleeping.
ProbeContext default_probe_context();

// Sends a ClientHello built from the profile, follows an HRR with one retried
// ClientHello, reads the plaintext server flight up to the negotiated group
// and aborts. Timeouts and transport errors are retried at most
// budget.retries (≤ 1) times after budget.backoff_s.
// Throws pqobs::Error(guardrail_violation) before connecting when a guardrail
// fails.
ProbeResult run_probe(const Target& target, const ProbeProfile& profile, Connector& connector,
                      const ProbeBudget& budget, const ProbeContext& ctx, const registry::Bundle& reg);

}  // namespace pqobs::surfaces
