// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqobs/common/bytes.hpp"
#include "pqobs/common/evidence.hpp"
#include "pqobs/registry/registry.hpp"
#include "pqobs/wire/decoder.hpp"
#include "pqobs/wire/transcript.hpp"

namespace pqobs::surfaces {

struct Provenance {
    std::string parser_version;
    std::string registry_version;
    std::string artifact_id;
    std::string digest;
    std::vector<double> capture_timestamps;  // first and last flow timestamp

    bool operator==(const Provenance&) const = default;
};

Provenance make_provenance(const wire::Transcript& t, const registry::Bundle& reg);

struct PassiveObservation {
    EvidenceValue negotiated_version;
    EvidenceValue selected_group;
    EvidenceValue cipher_suite;
    EvidenceValue hrr_seen;
    // Group the HRR asked for; known even when the second leg is missing.
    EvidenceValue hrr_requested_group;
    EvidenceValue mtls_seen;
    // known(true) for a full handshake, not_applicable for PSK resumption.
    EvidenceValue fresh_authentication;
    wire::Completeness completeness_status = wire::Completeness::truncated_pre_serverhello;
    std::vector<std::string> offered_groups;  // canonical names, raw hex when unregistered
    std::optional<std::vector<Bytes>> tls12_chain;
    wire::LayoutFlags layout_flags;
    Provenance provenance;

    bool operator==(const PassiveObservation&) const = default;
};

PassiveObservation build_passive_observation(const wire::HandshakeView& view, const registry::Bundle& reg,
                                             Provenance provenance);

// Decode + build in one step.
PassiveObservation observe_transcript(const wire::Transcript& t, const registry::Bundle& reg);

nlohmann::json to_json(const PassiveObservation& o);
PassiveObservation passive_observation_from_json(const nlohmann::json& j);

}  // namespace pqobs::surfaces
