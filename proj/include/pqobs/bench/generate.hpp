// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqobs/bench/catalog.hpp"
#include "pqobs/bench/emulator.hpp"
#include "pqobs/bench/fixtures.hpp"
#include "pqobs/registry/registry.hpp"
#include "pqobs/surfaces/probe.hpp"
#include "pqobs/wire/encoder.hpp"
#include "pqobs/wire/transcript.hpp"

namespace pqobs::bench {

struct ChainArtifact {
    surfaces::ChainSource source = surfaces::ChainSource::scenario_artifact;
    double timestamp = 0.0;
    surfaces::Linkage linkage = surfaces::Linkage::unlinked;
    std::vector<std::string> fixtures;
    std::vector<Bytes> chain;

    bool operator==(const ChainArtifact&) const = default;
};

json to_json(const ChainArtifact& c);
ChainArtifact chain_artifact_from_json(const json& j);

struct ScenarioBundle {
    std::string scenario_id;
    Family family = Family::canonical;
    std::string tls_version;
    ScenarioSpec config;
    wire::Transcript transcript;
    std::vector<surfaces::ProbeResult> probe_log;
    std::vector<ChainArtifact> chain_artifacts;
    // Expected field map: dotted path -> evidence object (canonical only).
    std::optional<json> ground_truth;
    std::optional<Contract> contract;
    std::uint64_t seed = 0;

    bool operator==(const ScenarioBundle&) const = default;
};

json to_json(const ScenarioBundle& b);
ScenarioBundle scenario_bundle_from_json(const json& j);
// SHA-256 over the serialized bundle.
std::string bundle_digest(const ScenarioBundle& b);

// Spec translations. Names are resolved through the registry and the cipher
// suite table; unknown names raise generation_error.
wire::WireConfig wire_config_for(const ScenarioSpec& spec, const registry::Bundle& reg, const FixtureSet& fx);
EmulatorConfig emulator_config_for(const EndpointSpec& e, const registry::Bundle& reg, const FixtureSet& fx,
                                   std::uint64_t seed);
surfaces::ProbeProfile bench_profile(const std::string& profile_id);

// Truth straight from the spec, the fixture manifest and the registry
// families; decoded bytes are never consulted.
json derive_ground_truth(const ScenarioSpec& spec, const registry::Bundle& reg, const FixtureSet& fx);

ScenarioBundle generate_scenario(const ScenarioSpec& spec, std::uint64_t seed, const registry::Bundle& reg,
                                 const FixtureSet& fx = default_fixtures());

inline constexpr std::uint64_t default_suite_seed = 20250101;

std::vector<ScenarioBundle> generate_suite_v1(std::uint64_t seed = default_suite_seed);

}  // namespace pqobs::bench
