// SPDX-License-Identifier: Apache-2.0
#include "pqobs/bench/bundle_io.hpp"

#include "pqobs/common/error.hpp"
#include "pqobs/common/io.hpp"
#include "pqobs/common/schema.hpp"
#include "pqobs/common/sha256.hpp"

namespace pqobs::bench {

namespace fs = std::filesystem;

namespace {

std::string scenario_record_text(const ScenarioBundle& b)
{
    json j = to_json(b);
    j.erase("transcript");
    j.erase("probe_log");
    return j.dump(2) + "\n";
}

std::string probe_log_text(const ScenarioBundle& b)
{
    std::string out;
    for (const auto& p : b.probe_log) {
        out += surfaces::to_json(p).dump() + "\n";
    }
    return out;
}

}  // namespace

void write_suite_bundle(const fs::path& dir, const std::vector<ScenarioBundle>& bundles, std::uint64_t seed)
{
    fs::create_directories(dir);
    json files = json::object();
    json scenarios = json::array();
    auto put = [&](const std::string& rel, const std::string& text) {
        write_text_file(dir / rel, text);
        files[rel] = sha256_hex(text);
    };
    for (const auto& b : bundles) {
        fs::create_directories(dir / b.scenario_id);
        put(b.scenario_id + "/scenario.json", scenario_record_text(b));
        put(b.scenario_id + "/transcript.json", wire::to_json(b.transcript).dump(2) + "\n");
        put(b.scenario_id + "/probe_log.jsonl", probe_log_text(b));
        scenarios.push_back({{"scenario_id", b.scenario_id},
                             {"family", std::string(to_string(b.family))},
                             {"tls_version", b.tls_version},
                             {"digest", bundle_digest(b)}});
    }
    json manifest = {{"benchmark", "pqobs-bench-v1"}, {"seed", seed}, {"scenarios", scenarios}, {"files", files}};
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

std::vector<ScenarioBundle> read_suite_bundle(const fs::path& dir)
{
    auto manifest_path = dir / "manifest.json";
    if (!fs::exists(manifest_path)) {
        throw Error("bundle_integrity", "missing " + manifest_path.string());
    }
    auto manifest = read_json_file(manifest_path);
    validate_or_throw("bundle_manifest", manifest, "bundle manifest");
    for (const auto& [rel, digest] : manifest["files"].items()) {
        if (!fs::exists(dir / rel)) {
            throw Error("bundle_integrity", "missing file " + rel);
        }
        if (sha256_hex(read_text_file(dir / rel)) != digest.get<std::string>()) {
            throw Error("bundle_integrity", "digest mismatch for " + rel);
        }
    }
    std::vector<ScenarioBundle> out;
    for (const auto& s : manifest["scenarios"]) {
        auto id = s.at("scenario_id").get<std::string>();
        auto base = dir / id;
        auto record = read_json_file(base / "scenario.json");
        validate_or_throw("scenario", record, id + "/scenario.json");
        record["transcript"] = read_json_file(base / "transcript.json");
        record["probe_log"] = json::array();
        for (auto& p : read_jsonl_file(base / "probe_log.jsonl")) {
            record["probe_log"].push_back(std::move(p));
        }
        auto b = scenario_bundle_from_json(record);
        if (bundle_digest(b) != s.at("digest").get<std::string>()) {
            throw Error("bundle_integrity", id + ": bundle digest mismatch");
        }
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace pqobs::bench
