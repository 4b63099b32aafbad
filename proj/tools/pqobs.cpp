// SPDX-License-Identifier: Apache-2.0
// pqobs command-line frontend. Each subcommand wraps one module operation;
// exit status is 0 only when the operation completed and its outputs
// validated.
#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "pqobs/bench/bundle_io.hpp"
#include "pqobs/bench/evaluate.hpp"
#include "pqobs/bench/metrics.hpp"
#include "pqobs/campaign/drift.hpp"
#include "pqobs/common/error.hpp"
#include "pqobs/common/io.hpp"
#include "pqobs/common/schema.hpp"
#include "pqobs/engine/policy.hpp"
#include "pqobs/report/render.hpp"
#include "pqobs/surfaces/passive.hpp"
#include "pqobs/surfaces/tcp.hpp"

using namespace pqobs;
namespace fs = std::filesystem;

namespace {

struct Globals {
    std::string data_dir;
    std::string registry_path;
};

std::shared_ptr<const registry::Bundle> load_reg(const Globals& g)
{
    if (!g.registry_path.empty()) {
        return std::make_shared<const registry::Bundle>(registry::load_registry(g.registry_path));
    }
    return registry::default_registry();
}

// Writes to `out` when given, standard output otherwise.
void emit(const std::string& out, const json& j)
{
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        write_json_file(out, j);
    }
}

void emit_text(const std::string& out, const std::string& text)
{
    if (out.empty()) {
        std::cout << text;
    } else {
        write_text_file(out, text);
    }
}

bool matches(std::string_view schema, const json& j)
{
    return schema_violations(bundled_schema(schema), j).empty();
}

// ---- decode -------------------------------------------------------------------

void cmd_decode(const Globals& g, const std::string& path, bool view, const std::string& out)
{
    auto reg = load_reg(g);
    auto t = wire::load_transcript(path);
    if (view) {
        emit(out, wire::to_json(wire::decode_transcript(t)));
        return;
    }
    auto obs = surfaces::to_json(surfaces::observe_transcript(t, *reg));
    validate_or_throw("passive_observation", obs, "observation");
    emit(out, obs);
}

// ---- probe --------------------------------------------------------------------

struct ProbeArgs {
    std::string host;
    int port = 443;
    std::string sni;
    std::string profile = "classical";
    std::string tier = "public_blind";
    bool tls12 = false;
    double timeout_s = 10.0;
    int retries = 1;
    double backoff_s = 30.0;
    std::string out;
};

void cmd_probe(const Globals& g, const ProbeArgs& a)
{
    auto reg = load_reg(g);
    surfaces::ProbeProfile profile;
    if (a.profile == "classical") {
        profile = surfaces::classical_profile(a.tls12);
    } else if (a.profile == "hybrid") {
        profile = surfaces::hybrid_profile(a.tls12);
    } else {
        profile = surfaces::probe_profile_from_json(read_json_file(a.profile));
    }
    surfaces::Target t;
    t.host = a.host;
    t.port = static_cast<std::uint16_t>(a.port);
    if (!a.sni.empty()) {
        t.sni = a.sni;
    }
    t.tier = surfaces::tier_from_string(a.tier);
    surfaces::TcpConnector tcp;
    auto r = surfaces::run_probe(t, profile, tcp, {a.timeout_s, a.retries, a.backoff_s},
                                 surfaces::default_probe_context(), *reg);
    auto j = surfaces::to_json(r);
    validate_or_throw("probe_result", j, "probe result");
    emit(a.out, j);
}

// ---- infer --------------------------------------------------------------------

struct InferArgs {
    std::string mode;
    std::vector<std::string> inputs;
    std::string scenario_id = "cli";
    std::string policy;
    std::string out;
};

void cmd_infer(const Globals& g, const InferArgs& a)
{
    auto reg = load_reg(g);
    auto mode = engine::mode_from_string(a.mode);
    engine::InferenceInput in;
    in.scenario_id = a.scenario_id;
    std::vector<surfaces::ProbeResult> probes;
    for (const auto& path : a.inputs) {
        auto j = read_json_file(path);
        if (matches("transcript", j) || matches("passive_observation", j)) {
            if (in.passive) {
                throw Error("invalid_input", "more than one passive input: " + path);
            }
            in.passive = matches("transcript", j) ? surfaces::observe_transcript(wire::transcript_from_json(j), *reg)
                                                  : surfaces::passive_observation_from_json(j);
        } else if (matches("probe_result", j)) {
            probes.push_back(surfaces::probe_result_from_json(j));
        } else if (matches("chain_observation", j)) {
            in.chains.push_back(surfaces::chain_observation_from_json(j));
        } else {
            throw Error("invalid_input", path + " is not a transcript, observation, probe result or chain observation");
        }
    }
    if (!probes.empty()) {
        in.active = engine::make_active_observations(probes, *reg);
    }
    auto m = engine::infer_measurement(mode, in, *reg);
    m = engine::apply_policy_profile(m, a.policy.empty() ? engine::default_policy() : engine::load_policy(a.policy),
                                     *reg);
    auto j = engine::to_json(m);
    validate_or_throw("measurement_object", j, "measurement object");
    emit(a.out, j);
}

// ---- bench --------------------------------------------------------------------

std::vector<engine::Mode> parse_modes(const std::vector<std::string>& names)
{
    std::vector<engine::Mode> out;
    for (const auto& n : names) {
        out.push_back(engine::mode_from_string(n));
    }
    if (out.empty()) {
        out.assign(engine::all_modes.begin(), engine::all_modes.end());
    }
    return out;
}

void cmd_bench_generate(std::uint64_t seed, const std::string& out)
{
    auto suite = bench::generate_suite_v1(seed);
    bench::write_suite_bundle(out, suite, seed);
    // Read back through the validating loader before reporting success.
    auto back = bench::read_suite_bundle(out);
    std::cout << "generated " << back.size() << " scenarios into " << out << "\n";
}

void cmd_bench_run(const Globals& g, const std::string& bundle_dir, const std::vector<std::string>& modes,
                   unsigned workers, const std::string& out)
{
    auto reg = load_reg(g);
    auto suite = bench::read_suite_bundle(bundle_dir);
    auto results = bench::run_suite(suite, parse_modes(modes), *reg, workers);
    fs::create_directories(out);
    for (const auto& [mode, objects] : results) {
        std::vector<json> lines;
        for (const auto& m : objects) {
            lines.push_back(engine::to_json(m));
        }
        write_jsonl_file(fs::path(out) / (std::string(engine::short_name(mode)) + ".jsonl"), lines);
    }
    std::cout << "ran " << suite.size() << " scenarios in " << results.size() << " modes into " << out << "\n";
}

void cmd_bench_evaluate(const std::string& bundle_dir, const std::string& results_dir, const std::string& family,
                        const std::string& scores_out, const std::string& out)
{
    auto suite = bench::read_suite_bundle(bundle_dir);
    if (family != "all") {
        suite = bench::select_family(suite, family == "canonical" ? bench::Family::canonical : bench::Family::stress);
    }
    bench::SuiteResults results;
    for (auto mode : engine::all_modes) {
        auto path = fs::path(results_dir) / (std::string(engine::short_name(mode)) + ".jsonl");
        if (!fs::exists(path)) {
            continue;
        }
        for (const auto& j : read_jsonl_file(path)) {
            results[mode].push_back(engine::measurement_from_json(j));
        }
    }
    if (results.empty()) {
        throw Error("metrics_error", "no result files in " + results_dir);
    }
    auto metrics = bench::compute_suite_metrics(family, suite, results);
    auto j = bench::to_json(metrics);
    validate_or_throw("suite_metrics", j, "suite metrics");
    emit(out, j);

    if (!scores_out.empty()) {
        json scores = json::array();
        for (const auto& [mode, objects] : results) {
            for (const auto& b : suite) {
                auto it = std::find_if(objects.begin(), objects.end(),
                                       [&](const auto& m) { return m.scenario_id == b.scenario_id; });
                if (b.ground_truth) {
                    scores.push_back(bench::to_json(bench::evaluate_exact(*it, *b.ground_truth)));
                } else if (b.contract) {
                    auto s = bench::to_json(bench::evaluate_contract(*it, *b.contract));
                    s["scenario_id"] = b.scenario_id;
                    s["mode"] = std::string(engine::to_string(mode));
                    scores.push_back(s);
                }
            }
        }
        write_json_file(scores_out, scores);
    }
}

// ---- campaign -----------------------------------------------------------------

std::vector<campaign::TargetRecord> load_inventory(const std::string& path)
{
    return campaign::inventory_from_json(read_json_file(path)).targets;
}

int cmd_campaign_validate(const Globals& g, const std::string& inventory, const std::string& out)
{
    auto reg = load_reg(g);
    auto v = campaign::validate_inventory(load_inventory(inventory), campaign::default_guardrails(), *reg);
    emit(out, campaign::to_json(v));
    return v.ok() ? 0 : 2;
}

void cmd_campaign_run(const Globals& g, const std::string& inventory, const std::string& config,
                      const std::string& emulate, const std::string& out)
{
    auto reg = load_reg(g);
    auto targets = load_inventory(inventory);
    auto cfg = config.empty() ? campaign::RoundConfig{} : campaign::round_config_from_json(read_json_file(config));
    campaign::EmulatedNetwork net;
    campaign::RoundEnvironment env;
    if (!emulate.empty()) {
        campaign::load_emulated_endpoints(net, read_json_file(emulate), targets);
        env = net.environment(bench::scenario_epoch);
    } else {
        env = campaign::live_environment();
    }
    auto result = campaign::run_round(targets, campaign::default_guardrails(), cfg, env, *reg);
    campaign::write_round(out, result);
    campaign::read_round_summary(fs::path(out) / "summary.json");
    std::cout << campaign::to_json(result.summary).dump(2) << "\n";
}

std::vector<campaign::TargetResult> load_round(const std::string& path)
{
    fs::path p(path);
    return campaign::read_round_results(fs::is_directory(p) ? p / "results.jsonl" : p);
}

void cmd_campaign_compare(const std::string& a, const std::string& b, const std::string& out)
{
    auto d = campaign::compare_rounds(load_round(a), load_round(b));
    auto j = campaign::to_json(d);
    campaign::drift_report_from_json(j);
    emit(out, j);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multi-surface post-quantum TLS observability toolkit"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--data-dir", g.data_dir, "Bundled data directory (registry, rules, policy, fixtures)");
    app.add_option("--registry", g.registry_path, "Registry bundle file");

    auto* decode = app.add_subcommand("decode", "Decode a transcript into a passive observation");
    std::string decode_in, decode_out;
    bool decode_view = false;
    decode->add_option("transcript", decode_in, "Transcript JSON")->required()->check(CLI::ExistingFile);
    decode->add_flag("--view", decode_view, "Emit the decoded handshake view instead");
    decode->add_option("-o,--out", decode_out, "Output file");

    auto* probe = app.add_subcommand("probe", "Run one active probe over TCP");
    ProbeArgs pa;
    probe->add_option("host", pa.host, "Target host name or address")->required();
    probe->add_option("--port", pa.port, "Target port")->check(CLI::Range(1, 65535));
    probe->add_option("--sni", pa.sni, "Server name");
    probe->add_option("--profile", pa.profile, "classical, hybrid, or a profile JSON file");
    probe->add_option("--tier", pa.tier, "public_blind, cooperative or emulated");
    probe->add_flag("--tls12", pa.tls12, "Also offer TLS 1.2");
    probe->add_option("--timeout", pa.timeout_s, "Per-attempt timeout in seconds");
    probe->add_option("--retries", pa.retries, "Retries after a timeout (0 or 1)")->check(CLI::Range(0, 1));
    probe->add_option("--backoff", pa.backoff_s, "Seconds to wait before the retry");
    probe->add_option("-o,--out", pa.out, "Output file");

    auto* infer = app.add_subcommand("infer", "Infer a measurement object from observation files");
    InferArgs ia;
    infer->add_option("--mode", ia.mode, "b1, b2 or b3")->required();
    infer->add_option("inputs", ia.inputs, "Transcript, passive observation, probe result and chain files")
        ->check(CLI::ExistingFile);
    infer->add_option("--id", ia.scenario_id, "Identifier stamped on the object");
    infer->add_option("--policy", ia.policy, "Policy file")->check(CLI::ExistingFile);
    infer->add_option("-o,--out", ia.out, "Output file");

    auto* benchc = app.add_subcommand("bench", "Benchmark suite");
    benchc->require_subcommand(1);
    auto* gen = benchc->add_subcommand("generate", "Generate the v1 suite bundle");
    std::uint64_t seed = bench::default_suite_seed;
    std::string gen_out;
    gen->add_option("--seed", seed, "Suite seed");
    gen->add_option("-o,--out", gen_out, "Bundle directory")->required();
    auto* run = benchc->add_subcommand("run", "Run inference modes over a bundle");
    std::string run_bundle, run_out;
    std::vector<std::string> run_modes;
    unsigned workers = 1;
    run->add_option("--bundle", run_bundle, "Bundle directory")->required()->check(CLI::ExistingDirectory);
    run->add_option("--mode", run_modes, "Modes (default all)");
    run->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 64u));
    run->add_option("-o,--out", run_out, "Results directory")->required();
    auto* eval = benchc->add_subcommand("evaluate", "Score results and compute suite metrics");
    std::string ev_bundle, ev_results, ev_family = "all", ev_scores, ev_out;
    eval->add_option("--bundle", ev_bundle, "Bundle directory")->required()->check(CLI::ExistingDirectory);
    eval->add_option("--results", ev_results, "Results directory")->required()->check(CLI::ExistingDirectory);
    eval->add_option("--family", ev_family, "canonical, stress or all")
        ->check(CLI::IsMember({"canonical", "stress", "all"}));
    eval->add_option("--scores", ev_scores, "Per-scenario score file");
    eval->add_option("-o,--out", ev_out, "Metrics file");

    auto* camp = app.add_subcommand("campaign", "Guardrailed measurement campaigns");
    camp->require_subcommand(1);
    auto* validate = camp->add_subcommand("validate", "Check an inventory against the guardrails");
    std::string inv, val_out;
    validate->add_option("--inventory", inv, "Inventory file")->required()->check(CLI::ExistingFile);
    validate->add_option("-o,--out", val_out, "Output file");
    auto* cr = camp->add_subcommand("run", "Run one probe round");
    std::string cr_config, cr_emulate, cr_out;
    cr->add_option("--inventory", inv, "Inventory file")->required()->check(CLI::ExistingFile);
    cr->add_option("--config", cr_config, "Campaign file")->check(CLI::ExistingFile);
    cr->add_option("--emulate", cr_emulate, "Emulated endpoint file (in-process endpoints)")->check(CLI::ExistingFile);
    cr->add_option("-o,--out", cr_out, "Round directory")->required();
    auto* cmp = camp->add_subcommand("compare", "Drift between two rounds");
    std::string ra, rb, cmp_out;
    cmp->add_option("round_a", ra, "Round directory or results file")->required()->check(CLI::ExistingPath);
    cmp->add_option("round_b", rb, "Round directory or results file")->required()->check(CLI::ExistingPath);
    cmp->add_option("-o,--out", cmp_out, "Drift report file");

    auto* rep = app.add_subcommand("report", "Render suite metrics, a round summary or a drift report");
    std::string rep_in, rep_format = "table_text", rep_out;
    rep->add_option("file", rep_in, "Input file")->required()->check(CLI::ExistingFile);
    rep->add_option("--format", rep_format, "table_text or structured");
    rep->add_option("-o,--out", rep_out, "Output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!g.data_dir.empty()) {
            set_data_dir(g.data_dir);
        }
        if (decode->parsed()) {
            cmd_decode(g, decode_in, decode_view, decode_out);
        } else if (probe->parsed()) {
            cmd_probe(g, pa);
        } else if (infer->parsed()) {
            cmd_infer(g, ia);
        } else if (gen->parsed()) {
            cmd_bench_generate(seed, gen_out);
        } else if (run->parsed()) {
            cmd_bench_run(g, run_bundle, run_modes, workers, run_out);
        } else if (eval->parsed()) {
            cmd_bench_evaluate(ev_bundle, ev_results, ev_family, ev_scores, ev_out);
        } else if (validate->parsed()) {
            return cmd_campaign_validate(g, inv, val_out);
        } else if (cr->parsed()) {
            cmd_campaign_run(g, inv, cr_config, cr_emulate, cr_out);
        } else if (cmp->parsed()) {
            cmd_campaign_compare(ra, rb, cmp_out);
        } else if (rep->parsed()) {
            emit_text(rep_out, report::render_report(read_json_file(rep_in), report::format_from_string(rep_format)));
        }
    } catch (const Error& e) {
        std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal_error"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
