// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqobs/bench/emulator.hpp"
#include "pqobs/campaign/inventory.hpp"
#include "pqobs/engine/infer.hpp"
#include "pqobs/surfaces/collector.hpp"

namespace pqobs::campaign {

inline constexpr unsigned max_concurrency = 20;

// Campaign file. Retry and backoff default to one retry after 30 s.
struct RoundConfig {
    std::string round_id = "R0";
    surfaces::ProbeBudget budget;
    unsigned concurrency = max_concurrency;
    std::uint64_t seed = 0;
    // Profile whose own handshake capture serves as the target's session view.
    std::string session_profile = "classical";

    bool operator==(const RoundConfig&) const = default;
};

json to_json(const RoundConfig& c);
RoundConfig round_config_from_json(const json& j);

// Connectors and the collector are called from worker threads.
struct RoundEnvironment {
    std::function<std::unique_ptr<surfaces::Connector>(const TargetRecord&)> connector_for;
    surfaces::ChainCollector* collector = nullptr;
    std::function<double()> now;
    std::function<void(double)> sleep;
};

// TCP probes, `openssl s_client` chains, wall clock.
RoundEnvironment live_environment();

struct TargetResult {
    std::string round_id;
    TargetRecord record;
    std::vector<surfaces::ProbeResult> probes;  // in record.profiles order
    std::optional<surfaces::ChainObservation> chain;
    std::string chain_error;
    engine::MeasurementObject measurement;
    bool hybrid_confirmed = false;
    bool classical_only = false;  // decisive, no hybrid group confirmed

    bool operator==(const TargetResult&) const = default;
};

json to_json(const TargetResult& r);
TargetResult target_result_from_json(const json& j);

struct RoundSummary {
    std::string round_id;
    std::size_t targets = 0;
    std::size_t probes = 0;
    std::size_t complete_handshakes = 0;
    std::size_t chain_artifacts = 0;
    std::size_t hybrid_confirmed = 0;
    std::size_t classical_only_under_tested_profiles = 0;
    std::size_t capability_broader = 0;
    std::size_t contradiction_bearing = 0;
    std::size_t clear_complete = 0;

    bool operator==(const RoundSummary&) const = default;
};

json to_json(const RoundSummary& s);
RoundSummary round_summary_from_json(const json& j);

struct RoundOutput {
    RoundSummary summary;
    std::vector<TargetResult> results;  // sorted by target_id
};

RoundSummary summarize(const std::string& round_id, const std::vector<TargetResult>& results);

// Re-validates the inventory and throws pqobs::Error(guardrail_violation)
// before any connection when a record fails; a concurrency above 20 raises
// invalid_config. Probe timeouts are outcomes, not errors.
RoundOutput run_round(const std::vector<TargetRecord>& inventory, const Guardrails& guardrails,
                      const RoundConfig& cfg, const RoundEnvironment& env, const registry::Bundle& reg);

// <dir>/results.jsonl (one TargetResult per line) and <dir>/summary.json.
void write_round(const std::filesystem::path& dir, const RoundOutput& out);
std::vector<TargetResult> read_round_results(const std::filesystem::path& jsonl);
RoundSummary read_round_summary(const std::filesystem::path& path);

// In-process endpoints for emulated inventories: one emulator per target,
// chains served from the emulator config, fixed clock and no real sleeping.
class EmulatedNetwork {
public:
    void add(const TargetRecord& record, bench::EmulatorConfig cfg);
    const bench::Emulator* emulator(const std::string& target_id) const;
    RoundEnvironment environment(double now) const;

private:
    std::map<std::string, std::unique_ptr<bench::Emulator>> emulators_;
    std::shared_ptr<surfaces::StaticCollector> collector_ = std::make_shared<surfaces::StaticCollector>();
};

// {"endpoints": {target_id: emulator config}}; every target_id must be in
// the inventory.
void load_emulated_endpoints(EmulatedNetwork& net, const json& j, const std::vector<TargetRecord>& inventory);

}  // namespace pqobs::campaign
