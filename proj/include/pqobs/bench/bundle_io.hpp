// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "pqobs/bench/generate.hpp"

namespace pqobs::bench {

// Frozen release layout:
//   <dir>/manifest.json               SHA-256 of every file below
//   <dir>/<scenario_id>/scenario.json
//   <dir>/<scenario_id>/transcript.json
//   <dir>/<scenario_id>/probe_log.jsonl
void write_suite_bundle(const std::filesystem::path& dir, const std::vector<ScenarioBundle>& bundles,
                        std::uint64_t seed);

// Validates the manifest schema and every digest before parsing; throws
// pqobs::Error(bundle_integrity) naming the first altered or missing file.
std::vector<ScenarioBundle> read_suite_bundle(const std::filesystem::path& dir);

}  // namespace pqobs::bench
