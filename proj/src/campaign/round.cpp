// SPDX-License-Identifier: Apache-2.0
#include "pqobs/campaign/round.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "pqobs/bench/fixtures.hpp"
#include "pqobs/common/error.hpp"
#include "pqobs/common/io.hpp"
#include "pqobs/common/schema.hpp"
#include "pqobs/engine/closure.hpp"
#include "pqobs/surfaces/capability.hpp"
#include "pqobs/surfaces/passive.hpp"
#include "pqobs/surfaces/tcp.hpp"
#include "pqobs/wire/transcript.hpp"

namespace pqobs::campaign {

namespace {

std::uint64_t mix(std::uint64_t seed, std::string_view label)
{
    std::uint64_t h = 1469598103934665603ull ^ seed;
    for (unsigned char c : label) {
        h = (h ^ c) * 1099511628211ull;
    }
    return h;
}

// Copies every byte the probe exchanges into a transcript, one per
// connection attempt, so the probe's own handshake can be read back as
// session evidence.
class RecordingConnection : public surfaces::Connection {
public:
    RecordingConnection(std::unique_ptr<surfaces::Connection> inner, wire::Transcript& t,
                        const std::function<double()>& now)
        : inner_(std::move(inner)), t_(t), now_(now)
    {
    }

    bool send(ByteView data, std::string& err) override
    {
        t_.flows.push_back({wire::Direction::client_to_server, now_(), Bytes(data.begin(), data.end())});
        return inner_->send(data, err);
    }

    ReadStatus read(Bytes& out, double timeout_s, std::string& err) override
    {
        auto st = inner_->read(out, timeout_s, err);
        if (st == ReadStatus::data && !out.empty()) {
            t_.flows.push_back({wire::Direction::server_to_client, now_(), out});
        }
        return st;
    }

    std::optional<bool> endpoint_reported_client_auth() const override
    {
        return inner_->endpoint_reported_client_auth();
    }

private:
    std::unique_ptr<surfaces::Connection> inner_;
    wire::Transcript& t_;
    const std::function<double()>& now_;
};

class RecordingConnector : public surfaces::Connector {
public:
    RecordingConnector(surfaces::Connector& inner, const std::function<double()>& now) : inner_(inner), now_(now) {}

    Result connect(const surfaces::Target& t, double timeout_s) override
    {
        auto r = inner_.connect(t, timeout_s);
        if (r.status == Status::ok && r.connection) {
            attempts_.push_back(std::make_unique<wire::Transcript>());
            r.connection = std::make_unique<RecordingConnection>(std::move(r.connection), *attempts_.back(), now_);
        }
        return r;
    }

    // The connection the probe finished on.
    const wire::Transcript* last() const { return attempts_.empty() ? nullptr : attempts_.back().get(); }

private:
    surfaces::Connector& inner_;
    const std::function<double()>& now_;
    std::vector<std::unique_ptr<wire::Transcript>> attempts_;
};

bool has_server_bytes(const wire::Transcript& t)
{
    return std::any_of(t.flows.begin(), t.flows.end(),
                       [](const auto& f) { return f.direction == wire::Direction::server_to_client; });
}

TargetResult probe_target(const TargetRecord& rec, const Guardrails& g, const RoundConfig& cfg,
                          const RoundEnvironment& env, const registry::Bundle& reg)
{
    TargetResult out;
    out.round_id = cfg.round_id;
    out.record = rec;
    auto target = rec.target();
    auto connector = env.connector_for(rec);

    std::optional<surfaces::PassiveObservation> session;
    for (const auto& pid : rec.profiles) {
        const auto& profile = g.profiles.at(pid);
        surfaces::ProbeContext ctx;
        ctx.now = env.now;
        ctx.sleep = env.sleep;
        ctx.seed = mix(cfg.seed, cfg.round_id + "/" + rec.target_id + "/" + pid);
        ctx.linkage = surfaces::Linkage::same_run_linked;
        RecordingConnector rec_conn(*connector, env.now);
        out.probes.push_back(surfaces::run_probe(target, profile, rec_conn, cfg.budget, ctx, reg));
        const auto* capture = rec_conn.last();
        if (pid == cfg.session_profile && out.probes.back().negotiated() && capture && has_server_bytes(*capture)) {
            auto t = *capture;
            t.artifact_id = cfg.round_id + "/" + rec.target_id + "/" + pid;
            t.refresh_digest();
            session = surfaces::observe_transcript(t, reg);
        }
    }

    bool any_negotiated = std::any_of(out.probes.begin(), out.probes.end(), [](const auto& p) { return p.negotiated(); });
    if (env.collector != nullptr && any_negotiated) {
        std::string err;
        double t = env.now();
        if (auto chain = env.collector->collect(target, err); chain && !chain->empty()) {
            out.chain = surfaces::parse_chain_observation(*chain, surfaces::ChainSource::active_probe, t,
                                                          surfaces::Linkage::same_run_linked, reg,
                                                          cfg.round_id + "/" + rec.target_id + "/chain");
        } else {
            out.chain_error = err.empty() ? "no_chain" : err;
        }
    }

    engine::InferenceInput in;
    in.scenario_id = rec.target_id;
    in.passive = session;
    in.active = engine::make_active_observations(out.probes, reg);
    if (out.chain) {
        in.chains.push_back(*out.chain);
    }
    out.measurement = engine::infer_measurement(engine::Mode::B3_multi_surface, in, reg);

    const auto& cap = in.active->summary;
    out.hybrid_confirmed = surfaces::confirms_family(cap, reg, registry::Family::hybrid);
    out.classical_only = cap.decisive && !out.hybrid_confirmed;
    return out;
}

}  // namespace

json to_json(const RoundConfig& c)
{
    return {{"round_id", c.round_id},
            {"budget", {{"timeout_s", c.budget.timeout_s}, {"retries", c.budget.retries}, {"backoff_s", c.budget.backoff_s}}},
            {"concurrency", c.concurrency},
            {"seed", c.seed},
            {"session_profile", c.session_profile}};
}

RoundConfig round_config_from_json(const json& j)
{
    validate_or_throw("campaign_config", j, "campaign config");
    RoundConfig c;
    c.round_id = j.at("round_id").get<std::string>();
    if (j.contains("budget")) {
        const auto& b = j["budget"];
        c.budget.timeout_s = b.value("timeout_s", c.budget.timeout_s);
        c.budget.retries = b.value("retries", c.budget.retries);
        c.budget.backoff_s = b.value("backoff_s", c.budget.backoff_s);
    }
    c.concurrency = j.value("concurrency", c.concurrency);
    c.seed = j.value("seed", c.seed);
    c.session_profile = j.value("session_profile", c.session_profile);
    return c;
}

RoundEnvironment live_environment()
{
    static surfaces::OpensslCliCollector collector;
    auto base = surfaces::default_probe_context();
    RoundEnvironment env;
    env.connector_for = [](const TargetRecord&) { return std::make_unique<surfaces::TcpConnector>(); };
    env.collector = &collector;
    env.now = base.now;
    env.sleep = base.sleep;
    return env;
}

json to_json(const TargetResult& r)
{
    json probes = json::array();
    for (const auto& p : r.probes) {
        probes.push_back(surfaces::to_json(p));
    }
    return {{"round_id", r.round_id},
            {"target", to_json(r.record)},
            {"probes", probes},
            {"chain", r.chain ? surfaces::to_json(*r.chain) : json(nullptr)},
            {"chain_error", r.chain_error},
            {"measurement", engine::to_json(r.measurement)},
            {"hybrid_confirmed", r.hybrid_confirmed},
            {"classical_only", r.classical_only}};
}

TargetResult target_result_from_json(const json& j)
{
    validate_or_throw("round_result", j, "round result");
    TargetResult r;
    r.round_id = j.at("round_id").get<std::string>();
    r.record = target_record_from_json(j.at("target"));
    for (const auto& p : j.at("probes")) {
        r.probes.push_back(surfaces::probe_result_from_json(p));
    }
    if (!j.at("chain").is_null()) {
        r.chain = surfaces::chain_observation_from_json(j["chain"]);
    }
    r.chain_error = j.at("chain_error").get<std::string>();
    r.measurement = engine::measurement_from_json(j.at("measurement"));
    r.hybrid_confirmed = j.at("hybrid_confirmed").get<bool>();
    r.classical_only = j.at("classical_only").get<bool>();
    return r;
}

json to_json(const RoundSummary& s)
{
    return {{"round_id", s.round_id},
            {"targets", s.targets},
            {"probes", s.probes},
            {"complete_handshakes", s.complete_handshakes},
            {"chain_artifacts", s.chain_artifacts},
            {"hybrid_confirmed", s.hybrid_confirmed},
            {"classical_only_under_tested_profiles", s.classical_only_under_tested_profiles},
            {"capability_broader", s.capability_broader},
            {"contradiction_bearing", s.contradiction_bearing},
            {"clear_complete", s.clear_complete}};
}

RoundSummary round_summary_from_json(const json& j)
{
    validate_or_throw("round_summary", j, "round summary");
    RoundSummary s;
    s.round_id = j.at("round_id").get<std::string>();
    s.targets = j.at("targets").get<std::size_t>();
    s.probes = j.at("probes").get<std::size_t>();
    s.complete_handshakes = j.at("complete_handshakes").get<std::size_t>();
    s.chain_artifacts = j.at("chain_artifacts").get<std::size_t>();
    s.hybrid_confirmed = j.at("hybrid_confirmed").get<std::size_t>();
    s.classical_only_under_tested_profiles = j.at("classical_only_under_tested_profiles").get<std::size_t>();
    s.capability_broader = j.at("capability_broader").get<std::size_t>();
    s.contradiction_bearing = j.at("contradiction_bearing").get<std::size_t>();
    s.clear_complete = j.at("clear_complete").get<std::size_t>();
    return s;
}

RoundSummary summarize(const std::string& round_id, const std::vector<TargetResult>& results)
{
    RoundSummary s;
    s.round_id = round_id;
    s.targets = results.size();
    for (const auto& r : results) {
        s.probes += r.probes.size();
        s.complete_handshakes += std::count_if(r.probes.begin(), r.probes.end(), [](const auto& p) { return p.negotiated(); });
        s.chain_artifacts += r.chain ? 1 : 0;
        s.hybrid_confirmed += r.hybrid_confirmed ? 1 : 0;
        s.classical_only_under_tested_profiles += r.classical_only ? 1 : 0;
        const auto& broader = r.measurement.capability.capability_broader_than_session;
        s.capability_broader += (broader.is_known() && broader.value == true) ? 1 : 0;
        s.contradiction_bearing += r.measurement.observability.contradiction_flag() ? 1 : 0;
        s.clear_complete += engine::compute_plane_closure(r.measurement).object_complete_clear ? 1 : 0;
    }
    return s;
}

RoundOutput run_round(const std::vector<TargetRecord>& inventory, const Guardrails& guardrails,
                      const RoundConfig& cfg, const RoundEnvironment& env, const registry::Bundle& reg)
{
    if (cfg.concurrency == 0 || cfg.concurrency > max_concurrency) {
        throw Error("invalid_config", "concurrency must be between 1 and " + std::to_string(max_concurrency));
    }
    if (!env.connector_for || !env.now || !env.sleep) {
        throw Error("invalid_config", "round environment is incomplete");
    }
    auto checked = validate_inventory(inventory, guardrails, reg);
    if (!checked.ok()) {
        std::string list;
        for (const auto& v : checked.violations) {
            list += (list.empty() ? "" : "; ") + v.target_id + ":" + v.rule;
        }
        throw Error("guardrail_violation", list);
    }

    auto targets = checked.accepted;
    std::sort(targets.begin(), targets.end(), [](const auto& a, const auto& b) { return a.target_id < b.target_id; });

    RoundOutput out;
    out.results.resize(targets.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::optional<Error> first_error;
    auto work = [&] {
        for (std::size_t i = next++; i < targets.size(); i = next++) {
            try {
                out.results[i] = probe_target(targets[i], guardrails, cfg, env, reg);
            } catch (const Error& e) {
                std::lock_guard lock(err_mu);
                if (!first_error) {
                    first_error = e;
                }
            }
        }
    };
    unsigned workers = std::min<unsigned>(cfg.concurrency, std::max<std::size_t>(1, targets.size()));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (first_error) {
        throw *first_error;
    }
    out.summary = summarize(cfg.round_id, out.results);
    return out;
}

void write_round(const std::filesystem::path& dir, const RoundOutput& out)
{
    std::filesystem::create_directories(dir);
    std::vector<json> lines;
    for (const auto& r : out.results) {
        lines.push_back(to_json(r));
    }
    write_jsonl_file(dir / "results.jsonl", lines);
    write_json_file(dir / "summary.json", to_json(out.summary));
}

std::vector<TargetResult> read_round_results(const std::filesystem::path& jsonl)
{
    std::vector<TargetResult> out;
    for (const auto& j : read_jsonl_file(jsonl)) {
        out.push_back(target_result_from_json(j));
    }
    return out;
}

RoundSummary read_round_summary(const std::filesystem::path& path)
{
    return round_summary_from_json(read_json_file(path));
}

void EmulatedNetwork::add(const TargetRecord& record, bench::EmulatorConfig cfg)
{
    if (!cfg.chain.empty()) {
        collector_->add(record.host + ":" + std::to_string(record.port), cfg.chain);
    }
    emulators_[record.target_id] = std::make_unique<bench::Emulator>(std::move(cfg));
}

const bench::Emulator* EmulatedNetwork::emulator(const std::string& target_id) const
{
    auto it = emulators_.find(target_id);
    return it == emulators_.end() ? nullptr : it->second.get();
}

RoundEnvironment EmulatedNetwork::environment(double now) const
{
    RoundEnvironment env;
    env.connector_for = [this](const TargetRecord& r) -> std::unique_ptr<surfaces::Connector> {
        auto it = emulators_.find(r.target_id);
        if (it == emulators_.end()) {
            throw Error("invalid_config", "no emulated endpoint for target " + r.target_id);
        }
        return it->second->connector();
    };
    env.collector = collector_.get();
    env.now = [now] { return now; };
    env.sleep = [](double) {};
    return env;
}

void load_emulated_endpoints(EmulatedNetwork& net, const json& j, const std::vector<TargetRecord>& inventory)
{
    validate_or_throw("emulated_endpoints", j, "emulated endpoints");
    for (const auto& [id, cfg] : j.at("endpoints").items()) {
        auto it = std::find_if(inventory.begin(), inventory.end(), [&](const auto& r) { return r.target_id == id; });
        if (it == inventory.end()) {
            throw Error("invalid_config", "emulated endpoint for unknown target " + id);
        }
        // Fill the emulator defaults and resolve fixture names to DER.
        json full = bench::to_json(bench::EmulatorConfig{});
        full.update(cfg);
        if (cfg.contains("chain_fixtures")) {
            std::vector<std::string> hex;
            for (const auto& der : bench::default_fixtures().chain(cfg["chain_fixtures"].get<std::vector<std::string>>())) {
                hex.push_back(to_hex(der));
            }
            full["chain_hex"] = hex;
            full.erase("chain_fixtures");
        }
        net.add(*it, bench::emulator_config_from_json(full));
    }
}

}  // namespace pqobs::campaign
