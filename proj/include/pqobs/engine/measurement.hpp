// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pqobs/common/evidence.hpp"

namespace pqobs::engine {

using nlohmann::json;

enum class Mode { B1_passive_only, B2_passive_active, B3_multi_surface };

std::string_view to_string(Mode m);
// Accepts the full names as well as "b1"/"B1" style short forms.
Mode mode_from_string(std::string_view s);
std::string_view short_name(Mode m);  // "B1"
inline constexpr std::array<Mode, 3> all_modes = {Mode::B1_passive_only, Mode::B2_passive_active,
                                                  Mode::B3_multi_surface};

enum class Plane {
    session_core,
    session_hidden_detail,
    capability,
    key_establishment,
    authentication,
    lifecycle,
    observability
};

inline constexpr std::array<Plane, 7> all_planes = {Plane::session_core,   Plane::session_hidden_detail,
                                                    Plane::capability,     Plane::key_establishment,
                                                    Plane::authentication, Plane::lifecycle,
                                                    Plane::observability};

std::string_view to_string(Plane p);
Plane plane_from_string(std::string_view s);

struct SessionProfile {
    EvidenceValue negotiated_version;
    EvidenceValue selected_group;
    EvidenceValue cipher_suite;
    EvidenceValue hrr_seen;
    EvidenceValue completeness;
    EvidenceValue mtls_seen;
    EvidenceValue fresh_authentication;

    bool operator==(const SessionProfile&) const = default;
};

struct KeyEstablishmentProfile {
    EvidenceValue profile;  // classical / hybrid / post_quantum
    std::vector<std::string> components;
    std::string applicability_state = "unresolved";  // applicable / not_applicable / unresolved

    bool operator==(const KeyEstablishmentProfile&) const = default;
};

struct CapabilityProfile {
    std::vector<std::string> probe_profiles;
    EvidenceValue supported_groups_lower_bound;  // known value is a sorted name list
    EvidenceValue capability_broader_than_session;

    bool operator==(const CapabilityProfile&) const = default;
};

struct AuthenticationProfile {
    EvidenceValue leaf_spki_algorithm;
    EvidenceValue leaf_signature_algorithm;
    EvidenceValue chain_depth;
    EvidenceValue chain_source_type;

    bool operator==(const AuthenticationProfile&) const = default;
};

struct LifecycleProfile {
    EvidenceValue validity_days;
    EvidenceValue short_lived_bucket;

    bool operator==(const LifecycleProfile&) const = default;
};

struct SourcedValue {
    json value;
    std::string source;  // passive, active, passive_chain, active_chain, artifact_chain
    double timestamp = 0.0;

    bool operator==(const SourcedValue&) const = default;
};

struct ContradictionRecord {
    std::string field;  // measurement path, e.g. authentication_profile.leaf_spki_algorithm
    SourcedValue a;
    SourcedValue b;

    bool operator==(const ContradictionRecord&) const = default;
};

struct ObservabilityProfile {
    std::vector<std::string> surface_origins;        // SigmaP / SigmaA / SigmaC, in that order
    std::map<std::string, std::string> plane_linkage;  // plane name -> source label
    std::vector<ContradictionRecord> contradiction_records;
    std::vector<std::string> ambiguity_reasons;

    bool contradiction_flag() const { return !contradiction_records.empty(); }
    bool operator==(const ObservabilityProfile&) const = default;
};

struct VerdictComponent {
    std::string id;
    std::optional<std::string> verdict;  // absent when withheld
    bool withheld = false;
    std::string reason;
    std::map<std::string, json> consumed;  // path -> evidence JSON it was derived from

    bool operator==(const VerdictComponent&) const = default;
};

struct PolicyProjection {
    std::string policy_id;
    std::vector<VerdictComponent> components;

    bool operator==(const PolicyProjection&) const = default;
};

struct MeasurementObject {
    std::string scenario_id;
    Mode mode = Mode::B1_passive_only;
    SessionProfile session;
    KeyEstablishmentProfile key_establishment;
    CapabilityProfile capability;
    AuthenticationProfile authentication;
    LifecycleProfile lifecycle;
    ObservabilityProfile observability;
    std::optional<PolicyProjection> policy;
    std::vector<std::string> inference_trace;

    bool operator==(const MeasurementObject&) const = default;
};

// JSON key of each plane's profile object ("session_profile", ...).
std::string_view plane_object_key(Plane p);

json to_json(const MeasurementObject& m);
// Validated against the measurement_object schema.
MeasurementObject measurement_from_json(const json& j);

// The planes S, K, C, A, L, O serialized without the policy projection and
// trace, for byte comparisons.
std::string planes_fingerprint(const MeasurementObject& m);

// Dotted path lookup ("session_profile.selected_group") into a serialized
// object. Returns nullptr when any segment is missing.
const json* lookup_path(const json& object, std::string_view dotted_path);

// Field-level view used by closure and contracts: an evidence object counts
// as resolved when known or justified not_applicable, a list when non-empty,
// anything else when non-null.
bool path_resolved(const json& node);

}  // namespace pqobs::engine
