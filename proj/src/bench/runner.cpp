// SPDX-License-Identifier: Apache-2.0
#include "pqobs/bench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace pqobs::bench {

using engine::Mode;

engine::InferenceInput inference_input(const ScenarioBundle& b, Mode mode, const registry::Bundle& reg,
                                       const engine::InferenceRules& rules)
{
    const auto& inputs = rules.for_mode(mode);
    engine::InferenceInput in;
    in.scenario_id = b.scenario_id;
    in.passive = surfaces::observe_transcript(b.transcript, reg);
    if (inputs.accepts_active && !b.probe_log.empty()) {
        in.active = engine::make_active_observations(b.probe_log, reg);
    }
    for (const auto& c : b.chain_artifacts) {
        if (inputs.accepts_chain(c.source)) {
            in.chains.push_back(surfaces::parse_chain_observation(c.chain, c.source, c.timestamp, c.linkage, reg,
                                                                  b.scenario_id + "/" + c.fixtures.front()));
        }
    }
    return in;
}

engine::MeasurementObject run_scenario(const ScenarioBundle& b, Mode mode, const registry::Bundle& reg,
                                       const engine::InferenceRules& rules)
{
    return engine::infer_measurement(mode, inference_input(b, mode, reg, rules), reg, rules);
}

SuiteResults run_suite(const std::vector<ScenarioBundle>& bundles, const std::vector<Mode>& modes,
                       const registry::Bundle& reg, unsigned workers, const engine::InferenceRules& rules)
{
    std::vector<const ScenarioBundle*> order;
    for (const auto& b : bundles) {
        order.push_back(&b);
    }
    std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) { return a->scenario_id < b->scenario_id; });

    SuiteResults out;
    for (auto m : modes) {
        out[m].resize(order.size());
    }
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < order.size(); i = next++) {
            for (auto m : modes) {
                out.at(m)[i] = run_scenario(*order[i], m, reg, rules);
            }
        }
    };
    workers = std::max(1u, workers);
    if (workers == 1) {
        work();
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back(work);
    }
    for (auto& t : pool) {
        t.join();
    }
    return out;
}

}  // namespace pqobs::bench
