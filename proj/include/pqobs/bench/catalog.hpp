// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqobs/bench/emulator.hpp"
#include "pqobs/bench/endpoint_server.hpp"
#include "pqobs/engine/measurement.hpp"
#include "pqobs/surfaces/types.hpp"
#include "pqobs/wire/mutations.hpp"

namespace pqobs::bench {

using nlohmann::json;

// Base capture time of every scenario and the drift offset.
inline constexpr double scenario_epoch = 1735689600.0;  // 2025-01-01T00:00:00Z
inline constexpr double drift_delta_s = 48.0 * 3600.0;

enum class Family { canonical, stress };

std::string_view to_string(Family f);
Family family_from_string(std::string_view s);

struct TruncationSpec {
    wire::TruncationCut::Kind kind = wire::TruncationCut::Kind::pre_serverhello;
    // byte_offset only: bytes kept past the end of the final ServerHello.
    std::size_t bytes_after_serverhello = 0;

    bool operator==(const TruncationSpec&) const = default;
};

// The captured session, by canonical names.
struct SessionSpec {
    std::string tls_version = "TLS1.3";
    std::vector<std::string> offered_groups;
    std::vector<std::string> key_share_groups;
    std::string cipher_suite = "TLS_AES_128_GCM_SHA256";
    std::optional<std::string> selected_group;
    std::optional<std::string> hrr_group;
    bool hrr_second_leg = true;
    std::string psk = "none";  // none / psk_dhe_ke / psk_ke
    bool mtls = false;
    std::vector<std::string> server_chain;  // fixture names, leaf first
    std::vector<std::string> client_chain;
    std::optional<TruncationSpec> truncation;
    std::vector<wire::LayoutMutation> mutations;

    bool operator==(const SessionSpec&) const = default;
};

// One configuration of the emulated endpoint the probes talk to.
struct EndpointSpec {
    std::vector<std::string> groups;
    std::vector<std::string> versions = {"TLS1.3"};
    std::vector<std::string> tls12_suites;
    bool mtls = false;
    std::vector<std::string> chain;
    std::string failure = "none";
    double latency_s = 0.0;

    bool operator==(const EndpointSpec&) const = default;
};

struct ProbeSpec {
    std::string profile;  // classical / hybrid
    surfaces::Linkage linkage = surfaces::Linkage::same_run_linked;
    double offset_s = 1.0;
    std::size_t endpoint_phase = 0;

    bool operator==(const ProbeSpec&) const = default;
};

struct ChainSpec {
    surfaces::ChainSource source = surfaces::ChainSource::scenario_artifact;
    std::vector<std::string> fixtures;
    double offset_s = 3.0;
    surfaces::Linkage linkage = surfaces::Linkage::same_target_probe_time;

    bool operator==(const ChainSpec&) const = default;
};

enum class Predicate {
    equals,
    is_unknown,
    is_not_applicable,
    is_ambiguous,
    contradiction_flagged,
    capability_broader_true,
    plane_closed,
    plane_open,
};

std::string_view to_string(Predicate p);
Predicate predicate_from_string(std::string_view s);

struct Assertion {
    std::string field_path;  // plane name for plane_closed / plane_open
    Predicate predicate = Predicate::equals;
    json argument;  // equals: value; is_not_applicable: reason (or null)
    // Modes the assertion applies to; empty means every mode.
    std::vector<engine::Mode> modes;

    bool applies_to(engine::Mode m) const;
    bool operator==(const Assertion&) const = default;
};

struct Contract {
    std::vector<Assertion> assertions;
    bool operator==(const Contract&) const = default;
};

json to_json(const Assertion& a);
Assertion assertion_from_json(const json& j);
json to_json(const Contract& c);
Contract contract_from_json(const json& j);

struct ScenarioSpec {
    std::string scenario_id;
    Family family = Family::canonical;
    std::string title;
    SessionSpec session;
    AddressFamily address_family = AddressFamily::ipv4;
    std::vector<EndpointSpec> endpoint_phases;
    std::vector<ProbeSpec> probes;
    std::vector<ChainSpec> chains;
    std::optional<Contract> contract;  // stress only

    bool operator==(const ScenarioSpec&) const = default;
};

json to_json(const ScenarioSpec& s);
ScenarioSpec scenario_spec_from_json(const json& j);

// The pinned v1 catalog: 14 canonical then 15 stress scenarios.
std::vector<ScenarioSpec> catalog_v1();

}  // namespace pqobs::bench
