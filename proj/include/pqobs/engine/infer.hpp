// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pqobs/engine/measurement.hpp"
#include "pqobs/engine/rules.hpp"
#include "pqobs/registry/registry.hpp"
#include "pqobs/surfaces/capability.hpp"
#include "pqobs/surfaces/chain.hpp"
#include "pqobs/surfaces/passive.hpp"
#include "pqobs/surfaces/probe.hpp"

namespace pqobs::engine {

struct ActiveObservations {
    std::vector<surfaces::ProbeResult> probes;
    surfaces::CapabilitySummary summary;
};

ActiveObservations make_active_observations(std::vector<surfaces::ProbeResult> probes, const registry::Bundle& reg);

struct InferenceInput {
    std::string scenario_id;
    std::optional<surfaces::PassiveObservation> passive;
    std::optional<ActiveObservations> active;
    // Any passively visible TLS 1.2 chain in `passive` is added automatically
    // when no passive_tls12 chain is listed here.
    std::vector<surfaces::ChainObservation> chains;
};

// Fills the planes in fixed order (session, hidden detail, key establishment,
// capability, authentication, lifecycle, observability). Throws
// pqobs::Error(configuration_error) when an input surface is not admitted by
// the mode; nothing is dropped silently.
MeasurementObject infer_measurement(Mode mode, const InferenceInput& input, const registry::Bundle& reg,
                                    const InferenceRules& rules = default_inference_rules());

// Source label of a chain in plane_linkage and contradiction records.
std::string chain_source_label(surfaces::ChainSource s);
// SigmaP / SigmaA / SigmaC for a source label.
std::string surface_of_label(const std::string& label);

}  // namespace pqobs::engine
