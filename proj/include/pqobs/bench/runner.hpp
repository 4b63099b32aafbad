// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <vector>

#include "pqobs/bench/generate.hpp"
#include "pqobs/engine/infer.hpp"

namespace pqobs::bench {

// Evidence a mode is allowed to see: B1 the transcript, B2 adds the probe
// log and active-probe chains, B3 every chain artifact.
engine::InferenceInput inference_input(const ScenarioBundle& b, engine::Mode mode, const registry::Bundle& reg,
                                       const engine::InferenceRules& rules = engine::default_inference_rules());

engine::MeasurementObject run_scenario(const ScenarioBundle& b, engine::Mode mode, const registry::Bundle& reg,
                                       const engine::InferenceRules& rules = engine::default_inference_rules());

using SuiteResults = std::map<engine::Mode, std::vector<engine::MeasurementObject>>;

// One result per bundle per mode, sorted by scenario_id. Scenarios run on up
// to `workers` threads; the output does not depend on the count.
SuiteResults run_suite(const std::vector<ScenarioBundle>& bundles, const std::vector<engine::Mode>& modes,
                       const registry::Bundle& reg, unsigned workers = 1,
                       const engine::InferenceRules& rules = engine::default_inference_rules());

}  // namespace pqobs::bench
