// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "pqobs/bench/fixtures.hpp"
#include "pqobs/bench/generate.hpp"
#include "pqobs/campaign/baseline.hpp"
#include "pqobs/campaign/drift.hpp"
#include "pqobs/campaign/stats.hpp"
#include "pqobs/common/error.hpp"
#include "pqobs/wire/constants.hpp"

using namespace pqobs;
using namespace pqobs::campaign;

namespace {

namespace fs = std::filesystem;

const registry::Bundle& reg()
{
    static auto r = registry::default_registry();
    return *r;
}

TargetRecord emulated_record(int i)
{
    TargetRecord r;
    char id[16];
    std::snprintf(id, sizeof id, "t%03d", i);
    r.target_id = id;
    r.host = r.target_id + ".emu.pqobs.test";
    r.sni = r.host;
    r.family = std::string(operational_families[i % operational_families.size()]);
    r.owner_scope = "lab";
    r.tier = surfaces::Tier::emulated;
    r.profiles = {"classical", "hybrid"};
    r.selection_source = "unit-test";
    r.selection_basis = "synthetic";
    return r;
}

bench::EmulatorConfig endpoint(bool hybrid, const std::vector<std::string>& chain = {"leaf_ecdsa_398"})
{
    bench::EmulatorConfig c;
    c.supported_groups = {wire::group::x25519};
    if (hybrid) {
        c.supported_groups.push_back(wire::group::x25519_mlkem768);
    }
    c.chain = bench::default_fixtures().chain(chain);
    return c;
}

struct Fleet {
    std::vector<TargetRecord> inventory;
    EmulatedNetwork net;

    void add(bench::EmulatorConfig cfg)
    {
        auto r = emulated_record(static_cast<int>(inventory.size()) + 1);
        inventory.push_back(r);
        net.add(r, std::move(cfg));
    }

    RoundOutput run(const std::string& round_id, unsigned workers = 4)
    {
        RoundConfig cfg;
        cfg.round_id = round_id;
        cfg.concurrency = workers;
        cfg.seed = 5;
        return run_round(inventory, default_guardrails(), cfg, net.environment(bench::scenario_epoch), reg());
    }
};

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("pqobs_campaign_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

// ---- inventory ------------------------------------------------------------

TEST(Inventory, MissingSniOnDnsHost)
{
    auto r = emulated_record(1);
    r.sni.reset();
    auto v = validate_inventory({r}, default_guardrails(), reg());
    ASSERT_EQ(v.violations.size(), 1u);
    EXPECT_EQ(v.violations[0].rule, "missing_sni");
    EXPECT_EQ(v.violations[0].target_id, "t001");
    EXPECT_TRUE(v.accepted.empty());

    r.host = "192.0.2.7";
    EXPECT_TRUE(validate_inventory({r}, default_guardrails(), reg()).ok());
}

TEST(Inventory, ClientAuthProfileOnPublicTarget)
{
    auto g = default_guardrails();
    auto mtls = surfaces::classical_profile();
    mtls.profile_id = "classical_mtls";
    mtls.client_auth_enabled = true;
    g.profiles.emplace(mtls.profile_id, mtls);

    auto r = emulated_record(2);
    r.tier = surfaces::Tier::public_blind;
    r.profiles = {"classical_mtls", "hybrid"};
    auto v = validate_inventory({r}, g, reg());
    ASSERT_EQ(v.violations.size(), 1u);
    EXPECT_EQ(v.violations[0].rule, "client_auth_on_public");

    r.tier = surfaces::Tier::cooperative;
    EXPECT_TRUE(validate_inventory({r}, g, reg()).ok());
}

TEST(Inventory, WellFormedAcceptedOthersRejected)
{
    auto good = emulated_record(3);
    auto dup = good;
    auto odd = emulated_record(4);
    odd.family = "social";
    odd.profiles = {"quantum"};
    auto v = validate_inventory({good, dup, odd}, default_guardrails(), reg());
    ASSERT_EQ(v.accepted.size(), 1u);
    EXPECT_EQ(v.accepted[0], good);
    std::vector<std::string> rules;
    for (const auto& x : v.violations) {
        rules.push_back(x.rule);
    }
    EXPECT_EQ(rules, (std::vector<std::string>{"duplicate_target_id", "unknown_family", "unknown_profile"}));
}

TEST(Inventory, JsonRoundTripAndSchema)
{
    Inventory inv{"inv-1", {emulated_record(1), emulated_record(2)}};
    EXPECT_EQ(inventory_from_json(to_json(inv)), inv);
    auto j = to_json(inv);
    j["targets"][0]["tier"] = "internal";
    EXPECT_THROW(inventory_from_json(j), Error);
    j = to_json(inv);
    j["targets"][1].erase("profiles");
    EXPECT_THROW(inventory_from_json(j), Error);
}

// ---- rounds ---------------------------------------------------------------

TEST(Round, FiveTargetsTwoHybrid)
{
    Fleet f;
    for (bool h : {true, false, true, false, false}) {
        f.add(endpoint(h));
    }
    auto out = f.run("R0");
    const auto& s = out.summary;
    EXPECT_EQ(s.targets, 5u);
    EXPECT_EQ(s.probes, 10u);
    EXPECT_EQ(s.complete_handshakes, 10u);
    EXPECT_EQ(s.chain_artifacts, 5u);
    EXPECT_EQ(s.hybrid_confirmed, 2u);
    EXPECT_EQ(s.classical_only_under_tested_profiles, 3u);
    EXPECT_EQ(s.hybrid_confirmed + s.classical_only_under_tested_profiles, s.targets);
    // hybrid targets negotiate X25519 under the classical profile
    EXPECT_EQ(s.capability_broader, 2u);
    EXPECT_EQ(s.contradiction_bearing, 0u);
    EXPECT_EQ(s.clear_complete, 5u);

    ASSERT_EQ(out.results.size(), 5u);
    const auto& first = out.results[0];
    EXPECT_EQ(first.record.target_id, "t001");
    EXPECT_TRUE(first.hybrid_confirmed);
    EXPECT_EQ(first.measurement.session.selected_group.value, "X25519");
    EXPECT_EQ(first.measurement.capability.capability_broader_than_session.value, true);
    EXPECT_EQ(first.measurement.authentication.leaf_signature_algorithm.value, "ecdsa-with-SHA256");
    EXPECT_EQ(out.results[1].measurement.capability.capability_broader_than_session.value, false);
}

TEST(Round, AllTimeoutInventory)
{
    Fleet f;
    for (int i = 0; i < 3; ++i) {
        auto c = endpoint(true);
        c.failure = bench::FailureMode::timeout;
        f.add(c);
    }
    auto s = f.run("R0").summary;
    EXPECT_EQ(s.probes, 6u);
    EXPECT_EQ(s.complete_handshakes, 0u);
    EXPECT_EQ(s.hybrid_confirmed, 0u);
    EXPECT_EQ(s.classical_only_under_tested_profiles, 0u);
    EXPECT_EQ(s.chain_artifacts, 0u);
    EXPECT_EQ(s.clear_complete, 0u);
}

TEST(Round, GuardrailSupremacy)
{
    Fleet f;
    f.add(endpoint(true));
    f.add(endpoint(false));
    f.inventory[1].sni.reset();
    EXPECT_THROW(f.run("R0"), Error);
    for (const auto& r : f.inventory) {
        EXPECT_TRUE(f.net.emulator(r.target_id)->handshake_log().empty()) << r.target_id;
    }
}

TEST(Round, ConcurrencyCapEnforced)
{
    Fleet f;
    f.add(endpoint(true));
    EXPECT_THROW(f.run("R0", 21), Error);
    EXPECT_THROW(f.run("R0", 0), Error);
}

TEST(Round, ResultsIndependentOfWorkerCount)
{
    Fleet f;
    std::mt19937 rng(3);
    for (int i = 0; i < 40; ++i) {
        f.add(endpoint(rng() % 3 == 0, {rng() % 2 ? "leaf_rsa_398" : "leaf_ecdsa_90"}));
    }
    auto one = f.run("R0", 1);
    auto twenty = f.run("R0", 20);
    EXPECT_EQ(one.summary, twenty.summary);
    EXPECT_EQ(one.results, twenty.results);
}

TEST(Round, FilesRoundTrip)
{
    Fleet f;
    f.add(endpoint(true));
    f.add(endpoint(false, {"leaf_rsa_90"}));
    auto out = f.run("R0");
    TempDir dir;
    write_round(dir.path, out);
    EXPECT_EQ(read_round_results(dir.path / "results.jsonl"), out.results);
    EXPECT_EQ(read_round_summary(dir.path / "summary.json"), out.summary);
}

TEST(Round, EmulatedEndpointFile)
{
    std::vector<TargetRecord> inv = {emulated_record(1)};
    json j = {{"endpoints", {{"t001", {{"supported_groups", {0x1d, 0x11ec}}, {"chain_fixtures", {"leaf_rsa_398"}}}}}}};
    EmulatedNetwork net;
    load_emulated_endpoints(net, j, inv);
    ASSERT_NE(net.emulator("t001"), nullptr);
    EXPECT_EQ(net.emulator("t001")->config().chain.size(), 1u);
    json stray = {{"endpoints", {{"t999", {{"supported_groups", {0x1d}}}}}}};
    EXPECT_THROW(load_emulated_endpoints(net, stray, inv), Error);
}

TEST(Round, ConfigJson)
{
    RoundConfig c;
    c.round_id = "R1";
    c.budget.retries = 0;
    c.concurrency = 8;
    EXPECT_EQ(round_config_from_json(to_json(c)), c);
    auto j = to_json(c);
    j["concurrency"] = 64;
    EXPECT_THROW(round_config_from_json(j), Error);
}

// ---- drift ----------------------------------------------------------------

TEST(Drift, IdenticalRoundsDoNotDrift)
{
    Fleet f;
    for (int i = 0; i < 6; ++i) {
        f.add(endpoint(i % 2 == 0));
    }
    auto a = f.run("R0");
    auto b = f.run("R1");
    auto d = compare_rounds(a.results, b.results);
    EXPECT_EQ(d.round_a, "R0");
    EXPECT_EQ(d.round_b, "R1");
    EXPECT_EQ(d.comparable_targets, 6u);
    EXPECT_DOUBLE_EQ(d.capability_drift_pct, 0.0);
    EXPECT_DOUBLE_EQ(d.certificate_drift_pct, 0.0);
    EXPECT_DOUBLE_EQ(d.lifecycle_drift_pct, 0.0);
    EXPECT_DOUBLE_EQ(d.signature_algorithm_drift_pct, 0.0);
    EXPECT_DOUBLE_EQ(d.clear_complete_stability_pct, 100.0);
}

TEST(Drift, PlantedEndpointChanges)
{
    // 10 targets; between rounds t001 drops hybrid, t002 swaps to another
    // ECDSA leaf of the same lifetime, t003 moves to an RSA key (still
    // ECDSA-signed by the intermediate), t004 to a short-lived leaf, t005
    // starts timing out (no longer comparable).
    Fleet a;
    Fleet b;
    for (int i = 1; i <= 10; ++i) {
        a.add(endpoint(true));
        auto cfg = endpoint(true);
        if (i == 1) cfg = endpoint(false);
        if (i == 2) cfg = endpoint(true, {"client_ecdsa"});
        if (i == 3) cfg = endpoint(true, {"leaf_rsa_398"});
        if (i == 4) cfg = endpoint(true, {"leaf_ecdsa_90"});
        if (i == 5) cfg.failure = bench::FailureMode::timeout;
        b.add(cfg);
    }
    auto d = compare_rounds(a.run("R0").results, b.run("R1").results);
    EXPECT_EQ(d.comparable_targets, 9u);
    EXPECT_EQ(d.counts.capability, 1u);
    EXPECT_EQ(d.counts.certificate, 3u);
    EXPECT_EQ(d.counts.signature_algorithm, 0u);
    EXPECT_EQ(d.counts.lifecycle, 1u);
    EXPECT_EQ(d.counts.clear_complete_kept, 9u);
    EXPECT_NEAR(d.capability_drift_pct, 100.0 / 9, 1e-9);
    EXPECT_NEAR(d.certificate_drift_pct, 300.0 / 9, 1e-9);
    EXPECT_EQ(drift_report_from_json(to_json(d)), d);
}

TEST(Drift, KnownSignatureChangeCounts)
{
    Fleet f;
    f.add(endpoint(true));
    f.add(endpoint(true));
    auto a = f.run("R0").results;
    auto b = a;
    b[1].measurement.authentication.leaf_signature_algorithm = EvidenceValue::known("sha256WithRSAEncryption");
    auto d = compare_rounds(a, b);
    EXPECT_EQ(d.counts.signature_algorithm, 1u);
    EXPECT_DOUBLE_EQ(d.signature_algorithm_drift_pct, 50.0);
}

TEST(Drift, UnknownValuesAreExcluded)
{
    Fleet f;
    f.add(endpoint(true));
    auto a = f.run("R0").results;
    auto b = a;
    b[0].round_id = "R1";
    b[0].measurement.authentication.leaf_signature_algorithm = EvidenceValue::unknown("parse_failure");
    b[0].measurement.capability.supported_groups_lower_bound = EvidenceValue::unknown("no_decisive_probe");
    auto d = compare_rounds(a, b);
    EXPECT_EQ(d.counts.signature_algorithm, 0u);
    EXPECT_EQ(d.counts.capability, 0u);
}

TEST(Drift, DisjointRoundsAreAnError)
{
    Fleet f;
    f.add(endpoint(true));
    f.add(endpoint(false));
    auto a = f.run("R0").results;
    std::vector<TargetResult> first = {a[0]};
    std::vector<TargetResult> second = {a[1]};
    try {
        compare_rounds(first, second);
        FAIL() << "no error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "comparison_error");
    }
    auto dup = a;
    dup.push_back(a[0]);
    EXPECT_THROW(compare_rounds(dup, a), Error);
}

TEST(Drift, SchemaRejectsEmptyReport)
{
    EXPECT_THROW(drift_report_from_json(json::object()), Error);
}

// ---- statistics -------------------------------------------------------------

namespace {

// Wilson bounds are the roots of (p - phat)^2 = z^2 p (1 - p) / n.
double wilson_residual(double p, double phat, double n, double z)
{
    return (p - phat) * (p - phat) - z * z * p * (1 - p) / n;
}

}  // namespace

TEST(Stats, WilsonTableValues)
{
    auto knowledge = wilson_interval(62, 100);
    EXPECT_NEAR(knowledge.low, 0.522, 1e-3);
    EXPECT_NEAR(knowledge.high, 0.709, 1e-3);
    auto government = wilson_interval(11, 100);
    EXPECT_NEAR(government.low, 0.063, 1e-3);
    EXPECT_NEAR(government.high, 0.186, 1e-3);
    EXPECT_DOUBLE_EQ(wilson_interval(0, 100).low, 0.0);
    EXPECT_DOUBLE_EQ(wilson_interval(100, 100).high, 1.0);
    EXPECT_THROW(wilson_interval(0, 0), Error);
    EXPECT_THROW(wilson_interval(5, 4), Error);
}

TEST(Stats, WilsonBoundsSolveScoreEquation)
{
    for (std::uint64_t n : {7u, 50u, 333u}) {
        for (std::uint64_t k = 1; k < n; k += n / 5 + 1) {
            auto iv = wilson_interval(k, n);
            double phat = double(k) / double(n);
            EXPECT_NEAR(wilson_residual(iv.low, phat, double(n), 1.96), 0.0, 1e-12);
            EXPECT_NEAR(wilson_residual(iv.high, phat, double(n), 1.96), 0.0, 1e-12);
        }
    }
}

TEST(Stats, WilsonContainsEstimateAndNarrows)
{
    for (std::uint64_t n = 1; n <= 200; ++n) {
        for (std::uint64_t k = 0; k <= n; ++k) {
            auto iv = wilson_interval(k, n);
            double p = double(k) / double(n);
            ASSERT_LE(iv.low, p + 1e-15);
            ASSERT_GE(iv.high, p - 1e-15);
            ASSERT_GE(iv.low, 0.0);
            ASSERT_LE(iv.high, 1.0);
        }
    }
    double prev = 1.0;
    for (std::uint64_t n = 4; n <= 4000; n *= 2) {
        auto iv = wilson_interval(n / 4, n);
        EXPECT_LT(iv.high - iv.low, prev);
        prev = iv.high - iv.low;
    }
}

TEST(Stats, McNemarExactBinomial)
{
    EXPECT_DOUBLE_EQ(mcnemar_test(5, 5).p_value, 1.0);
    EXPECT_DOUBLE_EQ(mcnemar_test(1, 0).p_value, 1.0);
    auto r = mcnemar_test(70, 0);
    EXPECT_EQ(r.variant, "exact_binomial");
    EXPECT_NEAR(r.p_value / std::ldexp(2.0, -70), 1.0, 1e-9);
    // closed form for a small table: 2 * (C(10,0) + C(10,1) + C(10,2)) / 2^10
    EXPECT_NEAR(mcnemar_test(2, 8).p_value, 2.0 * (1 + 10 + 45) / 1024.0, 1e-12);
    EXPECT_DOUBLE_EQ(mcnemar_test(8, 2).p_value, mcnemar_test(2, 8).p_value);
    auto d = mcnemar_test(0, 0);
    EXPECT_TRUE(d.degenerate);
    EXPECT_DOUBLE_EQ(d.p_value, 1.0);
}

TEST(Stats, McNemarMonotoneInImbalance)
{
    for (std::uint64_t total : {10u, 41u, 120u}) {
        double prev = 2.0;
        for (std::uint64_t b = total / 2 + total % 2; b <= total; ++b) {
            double p = mcnemar_test(b, total - b).p_value;
            EXPECT_LE(p, prev) << total << " " << b;
            EXPECT_GE(p, 0.0);
            prev = p;
        }
    }
}

TEST(Stats, BootstrapUpliftReference)
{
    std::vector<PairedOutcome> pairs(250);
    for (int i = 0; i < 70; ++i) {
        pairs[i].mode_b_hit = true;
    }
    auto r = bootstrap_uplift(pairs, 10000, 42);
    EXPECT_DOUBLE_EQ(r.point, 0.28);
    EXPECT_NEAR(r.ci_low, 0.224, 0.02);
    EXPECT_NEAR(r.ci_high, 0.336, 0.02);
    auto again = bootstrap_uplift(pairs, 10000, 42);
    EXPECT_EQ(again.ci_low, r.ci_low);
    EXPECT_EQ(again.ci_high, r.ci_high);
}

TEST(Stats, BootstrapEdgeCases)
{
    std::vector<PairedOutcome> same(30, PairedOutcome{true, true});
    auto r = bootstrap_uplift(same, 1000, 1);
    EXPECT_DOUBLE_EQ(r.point, 0.0);
    EXPECT_DOUBLE_EQ(r.ci_low, 0.0);
    EXPECT_DOUBLE_EQ(r.ci_high, 0.0);
    EXPECT_THROW(bootstrap_uplift({}, 1000, 1), Error);
    EXPECT_THROW(bootstrap_uplift(same, 999, 1), Error);
}

TEST(Stats, QuantileType7)
{
    std::vector<double> v = {1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(quantile_sorted(v, 1.0), 4.0);
    EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.5), 2.5);
    EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.25), 1.75);
}

// ---- baseline stubs -----------------------------------------------------------

TEST(Baseline, AdaptersAreStubs)
{
    for (const auto& name : baseline_adapter_names()) {
        auto a = make_baseline_adapter(name);
        EXPECT_EQ(a->name(), name);
        EXPECT_FALSE(a->available());
        try {
            a->run(emulated_record(1));
            FAIL() << name;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), "not_reproducible");
        }
    }
    EXPECT_THROW(make_baseline_adapter("nmap"), Error);
}
