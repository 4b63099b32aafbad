// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "pqobs/common/error.hpp"
#include "pqobs/common/io.hpp"
#include "pqobs/engine/closure.hpp"
#include "pqobs/engine/contradictions.hpp"
#include "pqobs/engine/infer.hpp"
#include "pqobs/engine/policy.hpp"
#include "pqobs/wire/constants.hpp"
#include "pqobs/wire/encoder.hpp"
#include "pqobs/wire/mutations.hpp"

using namespace pqobs;
using namespace pqobs::engine;
using surfaces::ChainSource;
using surfaces::Linkage;
namespace w = pqobs::wire;

namespace {

const registry::Bundle& reg()
{
    return *registry::default_registry();
}

Bytes fixture(const std::string& name)
{
    return read_binary_file(data_dir() / "fixtures" / "certs" / (name + ".der"));
}

w::WireConfig tls13_session(std::vector<std::uint16_t> offered, std::uint16_t selected)
{
    w::WireConfig c;
    c.client.versions = {w::version::tls13};
    c.client.cipher_suites = {0x1301};
    c.client.groups = offered;
    c.client.key_share_groups = offered;
    c.client.signature_schemes = {w::sig::ecdsa_secp256r1_sha256};
    c.client.sni = "engine.example.test";
    c.selected_group = selected;
    c.server_chain = {fixture("leaf_ecdsa_90"), fixture("intermediate_ecdsa")};
    return c;
}

w::WireConfig tls12_session(std::uint16_t suite, const std::string& leaf)
{
    w::WireConfig c;
    c.version = w::version::tls12;
    c.client.cipher_suites = {suite};
    c.client.groups = {w::group::x25519};
    c.client.signature_schemes = {w::sig::rsa_pkcs1_sha256};
    c.client.sni = "engine.example.test";
    c.cipher_suite = suite;
    if (w::cipher_suite_info(suite)->kx != w::KeyExchange::static_rsa) {
        c.selected_group = w::group::x25519;
    }
    c.server_chain = {fixture(leaf), fixture("intermediate_ecdsa")};
    return c;
}

surfaces::PassiveObservation passive(const w::WireConfig& c, double t = 1000.0)
{
    auto tr = w::encode_scenario_transcript(c, 7);
    double first = tr.flows.empty() ? 0.0 : tr.flows.front().timestamp;
    for (auto& f : tr.flows) {
        f.timestamp = t + (f.timestamp - first);
    }
    return surfaces::observe_transcript(tr, reg());
}

surfaces::ProbeResult probe(const std::string& profile, std::vector<std::string> offered, std::optional<std::string> group,
                            Linkage linkage, double t = 1001.0, std::optional<bool> mtls = false)
{
    surfaces::ProbeResult r;
    r.profile_id = profile;
    r.target = {"127.0.0.1", 4433, std::string("engine.example.test"), surfaces::Tier::emulated};
    r.timestamp = t;
    r.linkage = linkage;
    r.offered_groups = std::move(offered);
    r.outcome.kind = group ? surfaces::ProbeOutcome::Kind::negotiated : surfaces::ProbeOutcome::Kind::handshake_failure;
    r.outcome.group = group;
    r.outcome.version = "TLS1.3";
    r.outcome.server_requested_client_auth = mtls;
    return r;
}

std::vector<surfaces::ProbeResult> dual_probe(Linkage linkage, const std::string& hybrid_result = "X25519MLKEM768")
{
    return {probe("classical", {"X25519"}, "X25519", linkage),
            probe("hybrid", {"X25519MLKEM768", "X25519"}, hybrid_result, linkage, 1002.0)};
}

surfaces::ChainObservation chain(const std::string& leaf, ChainSource src, double t = 1003.0,
                                 Linkage linkage = Linkage::same_target_probe_time)
{
    return surfaces::parse_chain_observation({fixture(leaf), fixture("intermediate_ecdsa")}, src, t, linkage, reg());
}

InferenceInput hybrid_input()
{
    InferenceInput in;
    in.scenario_id = "hybrid";
    in.passive = passive(tls13_session({w::group::x25519_mlkem768, w::group::x25519}, w::group::x25519_mlkem768));
    in.active = make_active_observations(dual_probe(Linkage::same_run_linked), reg());
    in.chains = {chain("leaf_ecdsa_90", ChainSource::active_probe)};
    return in;
}

InferenceInput without_chains(InferenceInput in)
{
    in.chains.clear();
    return in;
}

InferenceInput passive_only(InferenceInput in)
{
    in.active.reset();
    in.chains.clear();
    return in;
}

}  // namespace

TEST(Infer, B3HybridCanonicalClosesEverything)
{
    auto m = infer_measurement(Mode::B3_multi_surface, hybrid_input(), reg());
    EXPECT_EQ(m.key_establishment.profile.value, "hybrid");
    EXPECT_EQ(m.key_establishment.components, (std::vector<std::string>{"X25519", "ML-KEM-768"}));
    EXPECT_EQ(m.key_establishment.applicability_state, "applicable");
    EXPECT_EQ(m.capability.supported_groups_lower_bound.value, json({"X25519", "X25519MLKEM768"}));
    EXPECT_EQ(m.capability.capability_broader_than_session.value, false);
    EXPECT_EQ(m.authentication.leaf_spki_algorithm.value, "ECDSA");
    EXPECT_EQ(m.authentication.chain_depth.value, 2);
    EXPECT_EQ(m.lifecycle.validity_days.value, 90);
    EXPECT_EQ(m.lifecycle.short_lived_bucket.value, true);
    EXPECT_EQ(m.observability.surface_origins, (std::vector<std::string>{"SigmaP", "SigmaA", "SigmaC"}));
    EXPECT_EQ(m.observability.plane_linkage.at("authentication"), "active_chain");
    EXPECT_TRUE(m.observability.ambiguity_reasons.empty());
    auto c = compute_plane_closure(m);
    EXPECT_TRUE(c.object_complete);
    EXPECT_TRUE(c.object_complete_clear);
}

TEST(Infer, SupportVersusNegotiation)
{
    InferenceInput in;
    in.passive = passive(tls13_session({w::group::x25519}, w::group::x25519));
    in.active = make_active_observations(dual_probe(Linkage::same_run_linked), reg());
    for (auto mode : {Mode::B2_passive_active, Mode::B3_multi_surface}) {
        auto m = infer_measurement(mode, in, reg());
        EXPECT_EQ(m.capability.capability_broader_than_session, EvidenceValue::known(true, {"hybrid_confirmed_classical_session"}));
        EXPECT_EQ(m.session.selected_group.value, "X25519");
        EXPECT_EQ(m.key_establishment.profile.value, "classical");
        EXPECT_TRUE(m.observability.contradiction_records.empty());
    }
}

TEST(Infer, BroaderNeedsLinkedProbes)
{
    InferenceInput in;
    in.passive = passive(tls13_session({w::group::x25519}, w::group::x25519));
    in.active = make_active_observations(dual_probe(Linkage::same_target_probe_time), reg());
    auto m = infer_measurement(Mode::B2_passive_active, in, reg());
    EXPECT_EQ(m.capability.capability_broader_than_session, EvidenceValue::unknown("capability_not_linked"));
    EXPECT_TRUE(m.capability.supported_groups_lower_bound.is_known());
    // Hidden detail needs same-run linkage too.
    EXPECT_EQ(m.session.mtls_seen.state, EvidenceState::unknown);
    EXPECT_TRUE(compute_plane_closure(m).is_closed(Plane::capability));
    EXPECT_FALSE(compute_plane_closure(m).is_closed(Plane::session_hidden_detail));
}

TEST(Infer, B1Tls13MtlsStaysUnknown)
{
    auto c = tls13_session({w::group::x25519}, w::group::x25519);
    c.request_client_cert = true;
    c.client_chain = {fixture("client_ecdsa")};
    InferenceInput in;
    in.passive = passive(c);
    auto m = infer_measurement(Mode::B1_passive_only, in, reg());
    EXPECT_EQ(m.session.mtls_seen.state, EvidenceState::unknown);
    EXPECT_FALSE(m.session.mtls_seen.value == false);

    in.active = make_active_observations({probe("classical", {"X25519"}, "X25519", Linkage::same_run_linked, 1001, true)},
                                         reg());
    auto b2 = infer_measurement(Mode::B2_passive_active, in, reg());
    EXPECT_EQ(b2.session.mtls_seen, EvidenceValue::known(true, {"same_run_linked_probe"}));
    EXPECT_EQ(b2.observability.plane_linkage.at("session_hidden_detail"), "active");
}

TEST(Infer, StaticRsaIsNotApplicable)
{
    InferenceInput in;
    in.passive = passive(tls12_session(0x009c, "leaf_rsa_398"));
    auto m = infer_measurement(Mode::B1_passive_only, in, reg());
    EXPECT_EQ(m.key_establishment.profile, EvidenceValue::not_applicable("static_rsa"));
    EXPECT_EQ(m.key_establishment.applicability_state, "not_applicable");
    // TLS 1.2 chain is passively visible.
    EXPECT_EQ(m.authentication.leaf_spki_algorithm.value, "RSA");
    EXPECT_EQ(m.authentication.chain_source_type.value, "passive_tls12");
    EXPECT_EQ(m.lifecycle.short_lived_bucket.value, false);
    EXPECT_EQ(m.observability.surface_origins, std::vector<std::string>{"SigmaP"});
    auto c = compute_plane_closure(m);
    EXPECT_TRUE(c.is_closed(Plane::key_establishment));
    EXPECT_TRUE(c.is_closed(Plane::authentication));
    EXPECT_TRUE(c.is_closed(Plane::session_hidden_detail));
    EXPECT_FALSE(c.is_closed(Plane::capability));
}

TEST(Infer, TruncatedSessionLeavesSessionCoreOpen)
{
    auto t = w::encode_scenario_transcript(tls13_session({w::group::x25519}, w::group::x25519), 1);
    InferenceInput in;
    in.passive = surfaces::observe_transcript(w::truncate_transcript(t, w::TruncationCut::pre_serverhello()), reg());
    auto m = infer_measurement(Mode::B1_passive_only, in, reg());
    EXPECT_EQ(m.session.selected_group.state, EvidenceState::unknown);
    EXPECT_EQ(m.key_establishment.profile.state, EvidenceState::unknown);
    auto c = compute_plane_closure(m);
    EXPECT_FALSE(c.is_closed(Plane::session_core));
    EXPECT_FALSE(c.is_closed(Plane::key_establishment));
}

TEST(Infer, HrrCommittedGroupFixesKeyEstablishment)
{
    auto c = tls13_session({w::group::x25519, w::group::x25519_mlkem768}, w::group::x25519_mlkem768);
    c.client.key_share_groups = {w::group::x25519};
    c.hrr_group = w::group::x25519_mlkem768;
    c.hrr_second_leg = false;
    InferenceInput in;
    in.passive = passive(c);
    auto m = infer_measurement(Mode::B1_passive_only, in, reg());
    EXPECT_EQ(m.session.selected_group.state, EvidenceState::unknown);
    EXPECT_EQ(m.key_establishment.profile, EvidenceValue::known("hybrid", {"hrr_committed_group"}));
    auto closure = compute_plane_closure(m);
    EXPECT_FALSE(closure.is_closed(Plane::session_core));
    EXPECT_TRUE(closure.is_closed(Plane::key_establishment));
}

TEST(Infer, ModeSurfaceMismatchIsAConfigurationError)
{
    auto in = hybrid_input();
    try {
        infer_measurement(Mode::B1_passive_only, without_chains(in), reg());
        FAIL() << "B1 accepted active evidence";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "configuration_error");
    }
    auto artifact = in;
    artifact.chains = {chain("leaf_ecdsa_90", ChainSource::scenario_artifact)};
    EXPECT_THROW(infer_measurement(Mode::B2_passive_active, artifact, reg()), Error);
    EXPECT_NO_THROW(infer_measurement(Mode::B3_multi_surface, artifact, reg()));
}

TEST(Infer, B2UsesActiveChainsOnlyForContradictions)
{
    auto in = hybrid_input();
    auto m = infer_measurement(Mode::B2_passive_active, in, reg());
    EXPECT_EQ(m.authentication.leaf_spki_algorithm.state, EvidenceState::unknown);
    EXPECT_TRUE(m.authentication.leaf_spki_algorithm.has_reason("certificate_encrypted_in_tls13"));
    EXPECT_TRUE(m.observability.contradiction_records.empty());
    // SigmaC still contributed.
    EXPECT_EQ(m.observability.surface_origins.back(), "SigmaC");
}

TEST(Infer, CertificateDriftBecomesContradiction)
{
    InferenceInput in;
    in.passive = passive(tls12_session(0xc02f, "leaf_rsa_398"), 1000);
    in.active = make_active_observations(dual_probe(Linkage::same_run_linked, "X25519"), reg());
    in.chains = {chain("leaf_ecdsa_398", ChainSource::active_probe, 1000 + 48 * 3600)};
    for (auto mode : {Mode::B2_passive_active, Mode::B3_multi_surface}) {
        auto m = infer_measurement(mode, in, reg());
        ASSERT_EQ(m.observability.contradiction_records.size(), 1u) << to_json(m).dump();
        const auto& r = m.observability.contradiction_records[0];
        EXPECT_EQ(r.field, "authentication_profile.leaf_spki_algorithm");
        EXPECT_EQ(r.a.value, "RSA");
        EXPECT_EQ(r.a.source, "passive_chain");
        EXPECT_EQ(r.b.value, "ECDSA");
        EXPECT_EQ(r.b.source, "active_chain");
        EXPECT_DOUBLE_EQ(r.b.timestamp - r.a.timestamp, 48 * 3600);
        // passive chain keeps priority; both values survive in the record
        EXPECT_EQ(m.authentication.leaf_spki_algorithm.value, "RSA");
        auto c = compute_plane_closure(m);
        EXPECT_TRUE(c.object_complete);
        EXPECT_FALSE(c.object_complete_clear);
    }
}

TEST(Infer, CapabilityDriftOnlyComparesEqualOffers)
{
    InferenceInput in;
    in.passive = passive(tls13_session({w::group::x25519_mlkem768, w::group::x25519}, w::group::x25519_mlkem768));
    auto probes = dual_probe(Linkage::same_run_linked);
    probes.push_back(probe("hybrid", {"X25519MLKEM768", "X25519"}, "X25519", Linkage::same_target_probe_time,
                           1000 + 48 * 3600));
    in.active = make_active_observations(probes, reg());
    auto m = infer_measurement(Mode::B2_passive_active, in, reg());
    ASSERT_EQ(m.observability.contradiction_records.size(), 1u);
    EXPECT_EQ(m.observability.contradiction_records[0].field, "session_profile.selected_group");
    EXPECT_EQ(m.observability.contradiction_records[0].b.value, "X25519");
    // the classical probe (different offer) never contradicts the hybrid session
    probes.pop_back();
    in.active = make_active_observations(probes, reg());
    EXPECT_TRUE(infer_measurement(Mode::B2_passive_active, in, reg()).observability.contradiction_records.empty());
}

TEST(Infer, RuleTraceFollowsFixedOrder)
{
    auto m = infer_measurement(Mode::B3_multi_surface, hybrid_input(), reg());
    std::vector<std::string> expected = {"S1.session_from_passive",
                                         "S2.hidden_detail_from_passive",
                                         "S3.hidden_detail_from_linked_probe",
                                         "K1.family_from_registry",
                                         "C1.capability_lower_bound",
                                         "C2.capability_broader_than_session",
                                         "A1.authentication_from_chain",
                                         "L1.lifecycle_from_chain",
                                         "O1.surface_linkage",
                                         "O2.cross_surface_contradictions",
                                         "O3.ambiguity_reasons"};
    EXPECT_EQ(m.inference_trace, expected);
    auto b1 = infer_measurement(Mode::B1_passive_only, passive_only(hybrid_input()), reg());
    for (const auto& id : b1.inference_trace) {
        EXPECT_NE(id[0], 'C') << id;
    }
}

// Provenance conservation: every linkage label maps to a contributing surface.
TEST(Infer, ProvenanceConservation)
{
    for (auto mode : all_modes) {
        auto in = hybrid_input();
        if (mode == Mode::B1_passive_only) {
            in = passive_only(in);
        }
        auto m = infer_measurement(mode, in, reg());
        for (const auto& [plane, label] : m.observability.plane_linkage) {
            auto surface = surface_of_label(label);
            EXPECT_NE(std::find(m.observability.surface_origins.begin(), m.observability.surface_origins.end(), surface),
                      m.observability.surface_origins.end())
                << plane;
        }
    }
}

TEST(Infer, ModeMonotonicity)
{
    std::vector<InferenceInput> inputs;
    inputs.push_back(hybrid_input());
    InferenceInput rsa;
    rsa.passive = passive(tls12_session(0x009c, "leaf_rsa_398"));
    rsa.active = make_active_observations({probe("classical", {"X25519"}, std::nullopt, Linkage::same_run_linked)}, reg());
    rsa.chains = {chain("leaf_rsa_398", ChainSource::active_probe)};
    inputs.push_back(rsa);
    for (const auto& in : inputs) {
        auto b1 = compute_plane_closure(infer_measurement(Mode::B1_passive_only, passive_only(in), reg()));
        auto b2 = compute_plane_closure(infer_measurement(Mode::B2_passive_active, in, reg()));
        auto b3 = compute_plane_closure(infer_measurement(Mode::B3_multi_surface, in, reg()));
        for (auto p : all_planes) {
            EXPECT_LE(b1.is_closed(p), b2.is_closed(p)) << to_string(p);
            EXPECT_LE(b2.is_closed(p), b3.is_closed(p)) << to_string(p);
        }
    }
}

TEST(Infer, NotApplicableAlwaysJustified)
{
    for (auto cfg : {tls12_session(0x009c, "leaf_rsa_90"), tls13_session({w::group::x25519}, w::group::x25519)}) {
        InferenceInput in;
        in.passive = passive(cfg);
        auto j = to_json(infer_measurement(Mode::B1_passive_only, in, reg()));
        std::function<void(const json&)> walk = [&](const json& n) {
            if (n.is_object()) {
                if (n.contains("state") && n["state"] == "not_applicable") {
                    EXPECT_FALSE(n["reasons"].empty());
                }
                for (const auto& [k, v] : n.items()) {
                    walk(v);
                }
            } else if (n.is_array()) {
                for (const auto& v : n) {
                    walk(v);
                }
            }
        };
        walk(j);
    }
}

TEST(Measurement, JsonRoundTripAndSchema)
{
    auto m = apply_policy_profile(infer_measurement(Mode::B3_multi_surface, hybrid_input(), reg()), default_policy(),
                                  reg());
    m.scenario_id = "c06";
    auto j = to_json(m);
    EXPECT_EQ(measurement_from_json(j), m);
    EXPECT_EQ(j["mode"], "B3_multi_surface");
    j["observability_profile"]["contradiction_flag"] = true;
    EXPECT_THROW(measurement_from_json(j), Error);
}

TEST(Measurement, ModeNames)
{
    EXPECT_EQ(mode_from_string("b2"), Mode::B2_passive_active);
    EXPECT_EQ(mode_from_string("B3"), Mode::B3_multi_surface);
    EXPECT_EQ(mode_from_string("B1_passive_only"), Mode::B1_passive_only);
    EXPECT_THROW(mode_from_string("b4"), Error);
}

TEST(Contradictions, DetectsFirstDifferingPairPerField)
{
    std::vector<FieldAssertion> in = {
        {"authentication_profile.leaf_spki_algorithm", EvidenceValue::known("RSA"), "passive_chain", 0},
        {"authentication_profile.leaf_spki_algorithm", EvidenceValue::known("ECDSA"), "active_chain", 172800},
        {"authentication_profile.leaf_spki_algorithm", EvidenceValue::known("Ed25519"), "artifact_chain", 5},
    };
    auto out = detect_contradictions(in);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].a.value, "RSA");
    EXPECT_EQ(out[0].b.value, "ECDSA");
    EXPECT_EQ(out[0].b.timestamp, 172800);
}

TEST(Contradictions, AgreementAndNonKnownNeverContradict)
{
    EXPECT_TRUE(detect_contradictions({{"f", EvidenceValue::known("X25519"), "passive", 0},
                                       {"f", EvidenceValue::known("X25519"), "active", 1}})
                    .empty());
    EXPECT_TRUE(detect_contradictions({{"f", EvidenceValue::unknown("truncated_pre_serverhello"), "passive", 0},
                                       {"f", EvidenceValue::known("X25519"), "active", 1},
                                       {"f", EvidenceValue::not_applicable("static_rsa"), "passive", 2},
                                       {"f", EvidenceValue::ambiguous({"a", "b"}, "normalized_collision"), "x", 3}})
                    .empty());
    EXPECT_TRUE(detect_contradictions({}).empty());
}

// Random assertion sets: a record exists for a field iff its known values differ.
TEST(Contradictions, PropertyOverRandomAssertions)
{
    std::mt19937_64 rng(11);
    std::vector<std::string> values{"RSA", "ECDSA", "Ed25519"};
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<FieldAssertion> in;
        std::map<std::string, std::set<std::string>> known;
        int n = static_cast<int>(rng() % 6);
        for (int i = 0; i < n; ++i) {
            std::string field = "f" + std::to_string(rng() % 3);
            if (rng() % 3 == 0) {
                in.push_back({field, EvidenceValue::unknown("x"), "passive", 0});
            } else {
                auto v = values[rng() % values.size()];
                in.push_back({field, EvidenceValue::known(v), "passive", static_cast<double>(i)});
                known[field].insert(v);
            }
        }
        auto out = detect_contradictions(in);
        std::set<std::string> flagged;
        for (const auto& r : out) {
            EXPECT_NE(r.a.value, r.b.value);
            EXPECT_TRUE(flagged.insert(r.field).second);
        }
        for (const auto& [field, vs] : known) {
            EXPECT_EQ(flagged.count(field) == 1, vs.size() > 1);
        }
    }
}

TEST(Closure, CompleteRequiresAllPlanes)
{
    auto m = infer_measurement(Mode::B2_passive_active, without_chains(hybrid_input()), reg());
    auto c = compute_plane_closure(m);
    EXPECT_FALSE(c.is_closed(Plane::authentication));
    EXPECT_FALSE(c.is_closed(Plane::lifecycle));
    EXPECT_FALSE(c.object_complete);
    EXPECT_EQ(c.closed_planes().size(), 5u);
}

TEST(Closure, ContradictionBlockingIsConfigurable)
{
    InferenceInput in;
    in.passive = passive(tls12_session(0xc02f, "leaf_rsa_398"));
    in.active = make_active_observations(dual_probe(Linkage::same_run_linked, "X25519"), reg());
    in.chains = {chain("leaf_ecdsa_398", ChainSource::active_probe)};
    auto m = infer_measurement(Mode::B3_multi_surface, in, reg());
    auto rules = default_closure_rules();
    EXPECT_TRUE(compute_plane_closure(m, rules).is_closed(Plane::authentication));
    rules.contradiction_blocks_closure = true;
    auto strict = compute_plane_closure(m, rules);
    EXPECT_FALSE(strict.is_closed(Plane::authentication));
    EXPECT_TRUE(strict.is_closed(Plane::lifecycle));
}

TEST(Closure, ObservabilityNeedsLinkageForKnownValues)
{
    auto m = infer_measurement(Mode::B3_multi_surface, hybrid_input(), reg());
    EXPECT_TRUE(compute_plane_closure(m).is_closed(Plane::observability));
    m.observability.plane_linkage.erase("lifecycle");
    EXPECT_FALSE(compute_plane_closure(m).is_closed(Plane::observability));
}

TEST(Rules, DefaultFilesLoadAndRejectUnknownIds)
{
    const auto& r = default_inference_rules();
    EXPECT_EQ(r.short_lived_max_days, 90);
    EXPECT_TRUE(r.enabled("C1.capability_lower_bound", Mode::B2_passive_active));
    EXPECT_FALSE(r.enabled("C1.capability_lower_bound", Mode::B1_passive_only));
    EXPECT_THROW(r.enabled("Z9.nothing", Mode::B1_passive_only), Error);
    auto j = read_json_file(data_dir() / "rules" / "inference_v1.json");
    j["rules"].push_back(j["rules"][0]);
    EXPECT_THROW(inference_rules_from_json(j), Error);
    auto cj = read_json_file(data_dir() / "rules" / "closure_v1.json");
    cj["required_fields"].erase("lifecycle");
    EXPECT_THROW(closure_rules_from_json(cj), Error);
}

TEST(Rules, ShortLivedThresholdIsConfigurable)
{
    auto rules = default_inference_rules();
    rules.short_lived_max_days = 30;
    auto m = infer_measurement(Mode::B3_multi_surface, hybrid_input(), reg(), rules);
    EXPECT_EQ(m.lifecycle.short_lived_bucket.value, false);
    EXPECT_TRUE(m.lifecycle.short_lived_bucket.has_reason("short_lived_max_days=30"));
}

TEST(Policy, HybridCapableClassicalSession)
{
    InferenceInput in;
    in.passive = passive(tls13_session({w::group::x25519}, w::group::x25519));
    in.active = make_active_observations(dual_probe(Linkage::same_run_linked), reg());
    in.chains = {chain("leaf_ecdsa_90", ChainSource::active_probe)};
    auto m = apply_policy_profile(infer_measurement(Mode::B3_multi_surface, in, reg()), default_policy(), reg());
    ASSERT_TRUE(m.policy);
    const auto& comp = m.policy->components.at(0);
    EXPECT_EQ(comp.verdict, "hybrid-capable with classical negotiation under the default client");
    EXPECT_TRUE(comp.consumed.count("capability_profile.capability_broader_than_session"));
}

TEST(Policy, ClassicalOnlyUnderTestedProfiles)
{
    InferenceInput in;
    in.passive = passive(tls13_session({w::group::x25519}, w::group::x25519));
    in.active = make_active_observations(dual_probe(Linkage::same_run_linked, "X25519"), reg());
    auto m = apply_policy_profile(infer_measurement(Mode::B2_passive_active, in, reg()), default_policy(), reg());
    EXPECT_EQ(m.policy->components.at(0).verdict, "classical-only under tested profiles");
    // authentication plane unknown in B2 TLS 1.3: withheld with reason
    const auto& auth = m.policy->components.at(1);
    EXPECT_TRUE(auth.withheld);
    EXPECT_FALSE(auth.verdict.has_value());
    EXPECT_EQ(auth.reason, "unresolved_input: authentication_profile.leaf_spki_algorithm");
}

TEST(Policy, IsolationLeavesPlanesByteIdentical)
{
    auto m = infer_measurement(Mode::B3_multi_surface, hybrid_input(), reg());
    auto before = planes_fingerprint(m);
    auto p1 = apply_policy_profile(m, default_policy(), reg());
    Policy alt;
    alt.policy_id = "alt";
    alt.components.push_back({"all", {"session_profile.selected_group"}, {}, std::string("anything")});
    auto p2 = apply_policy_profile(p1, alt, reg());
    EXPECT_EQ(planes_fingerprint(p1), before);
    EXPECT_EQ(planes_fingerprint(p2), before);
    EXPECT_EQ(p2.inference_trace, m.inference_trace);
    EXPECT_EQ(p2.policy->policy_id, "alt");
}

TEST(Policy, MalformedFilesAreRejected)
{
    auto j = read_json_file(data_dir() / "policy" / "default_v1.json");
    auto bad = j;
    bad["components"][0]["cases"][0]["when"][0]["op"] = "approximately";
    try {
        policy_from_json(bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "policy_load_error");
    }
    bad = j;
    bad["components"][0].erase("requires");
    EXPECT_THROW(policy_from_json(bad), Error);
    EXPECT_THROW(load_policy("/nonexistent/policy.json"), Error);
}
