// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "pqobs/common/error.hpp"
#include "pqobs/common/sha256.hpp"
#include "pqobs/wire/constants.hpp"
#include "pqobs/wire/decoder.hpp"
#include "pqobs/wire/encoder.hpp"
#include "pqobs/wire/messages.hpp"
#include "pqobs/wire/mutations.hpp"
#include "../support/wire_oracles.hpp"

using namespace pqobs;
using namespace pqobs::wire;

namespace {

std::vector<Bytes> fake_chain(std::size_t depth)
{
    std::vector<Bytes> chain;
    for (std::size_t i = 0; i < depth; ++i) {
        Bytes cert(500 + 100 * i, static_cast<std::uint8_t>(0x40 + i));
        cert[0] = 0x30;
        chain.push_back(cert);
    }
    return chain;
}

WireConfig tls13_hybrid()
{
    WireConfig c;
    c.artifact_id = "hybrid";
    c.client.versions = {version::tls13};
    c.client.cipher_suites = {0x1301, 0x1302};
    c.client.groups = {group::x25519_mlkem768, group::x25519};
    c.client.key_share_groups = {group::x25519_mlkem768, group::x25519};
    c.client.signature_schemes = {sig::ecdsa_secp256r1_sha256, sig::rsa_pss_rsae_sha256};
    c.client.sni = "pq.example.test";
    c.selected_group = group::x25519_mlkem768;
    c.server_chain = fake_chain(2);
    return c;
}

WireConfig tls12_ecdhe_rsa()
{
    WireConfig c;
    c.artifact_id = "tls12";
    c.version = version::tls12;
    c.client.cipher_suites = {0xc02f, 0x009c};
    c.client.groups = {group::x25519, group::secp256r1};
    c.client.signature_schemes = {sig::rsa_pkcs1_sha256};
    c.client.sni = "legacy.example.test";
    c.cipher_suite = 0xc02f;
    c.selected_group = group::x25519;
    c.server_chain = fake_chain(2);
    return c;
}

std::vector<HandshakeMessage> messages_of(const Transcript& t)
{
    return decode_transcript(t).messages;
}

std::string error_code(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return "no error";
}

}  // namespace

TEST(Constants, HrrRandomIsSha256OfLabel)
{
    Bytes r(hello_retry_request_random.begin(), hello_retry_request_random.end());
    EXPECT_EQ(to_hex(r), sha256_hex(std::string_view("HelloRetryRequest")));
    EXPECT_EQ(to_hex(r), "cf21ad74e59a6111be1d8c021e65b891c2a211167abb8c5e079e09e2c8a8339c");
}

TEST(Constants, KeyShareSizes)
{
    EXPECT_EQ(key_share_length(group::x25519, false), 32u);
    EXPECT_EQ(key_share_length(group::secp256r1, false), 65u);
    EXPECT_EQ(key_share_length(group::mlkem768, false), 1184u);
    EXPECT_EQ(key_share_length(group::mlkem768, true), 1088u);
    EXPECT_EQ(key_share_length(group::x25519_mlkem768, false), 1216u);
    EXPECT_EQ(key_share_length(group::x25519_mlkem768, true), 1120u);
    EXPECT_EQ(key_share_length(group::secp256r1_mlkem768, false), 1249u);
}

TEST(Decode, Tls13HybridSession)
{
    auto cfg = tls13_hybrid();
    auto v = decode_transcript(encode_scenario_transcript(cfg, 7));
    ASSERT_TRUE(v.client_hello);
    const auto& offered = v.client_hello->offered_groups;
    EXPECT_NE(std::find(offered.begin(), offered.end(), group::x25519), offered.end());
    EXPECT_NE(std::find(offered.begin(), offered.end(), group::x25519_mlkem768), offered.end());
    ASSERT_TRUE(v.server_hello);
    EXPECT_EQ(v.server_hello->key_share_group, group::x25519_mlkem768);
    EXPECT_EQ(v.server_hello->selected_version, version::tls13);
    EXPECT_FALSE(v.server_hello->is_hrr);
    EXPECT_EQ(v.completeness, Completeness::complete);
    EXPECT_TRUE(pqobs::testing::field_recovery_mismatches(cfg, v).empty());
}

TEST(Decode, EmptyTranscript)
{
    Transcript t;
    t.refresh_digest();
    auto v = decode_transcript(t);
    EXPECT_TRUE(v.messages.empty());
    EXPECT_EQ(v.completeness, Completeness::truncated_pre_serverhello);
}

TEST(Decode, CutBeforeServerHello)
{
    auto full = encode_scenario_transcript(tls13_hybrid(), 1);
    auto spans = handshake_message_spans(full);
    auto sh = std::find_if(spans.begin(), spans.end(), [](const MessageSpan& s) { return s.type == hs::server_hello; });
    ASSERT_NE(sh, spans.end());
    auto cut = truncate_transcript(full, TruncationCut::byte_offset(sh->record_begin));
    auto v = decode_transcript(cut);
    EXPECT_TRUE(v.client_hello.has_value());
    EXPECT_FALSE(v.server_hello.has_value());
    EXPECT_EQ(v.completeness, Completeness::truncated_pre_serverhello);
}

TEST(Decode, Tls12ChainAndEcdheGroup)
{
    auto cfg = tls12_ecdhe_rsa();
    auto v = decode_transcript(encode_scenario_transcript(cfg, 3));
    ASSERT_TRUE(v.tls12_certificate_chain);
    EXPECT_EQ(v.tls12_certificate_chain->size(), 2u);
    EXPECT_EQ(v.tls12_server_key_exchange_group, group::x25519);
    EXPECT_EQ(v.completeness, Completeness::complete);
    ASSERT_TRUE(v.server_hello);
    EXPECT_FALSE(v.server_hello->supported_versions_present);
    EXPECT_EQ(v.server_hello->selected_version, version::tls12);
}

TEST(Decode, HelloRetryRequest)
{
    auto cfg = tls13_hybrid();
    cfg.client.key_share_groups = {group::x25519};
    cfg.hrr_group = group::x25519_mlkem768;
    auto v = decode_transcript(encode_scenario_transcript(cfg, 5));
    ASSERT_TRUE(v.server_hello);
    EXPECT_TRUE(v.server_hello->is_hrr);
    EXPECT_EQ(v.server_hello->key_share_group, group::x25519_mlkem768);
    ASSERT_TRUE(v.second_server_hello);
    EXPECT_EQ(v.second_server_hello->key_share_group, group::x25519_mlkem768);
    EXPECT_EQ(v.completeness, Completeness::complete);

    cfg.hrr_second_leg = false;
    auto partial = decode_transcript(encode_scenario_transcript(cfg, 5));
    EXPECT_TRUE(partial.hrr_seen());
    EXPECT_EQ(partial.final_server_hello(), nullptr);
    EXPECT_EQ(partial.completeness, Completeness::truncated_post_serverhello);
}

// legacy_version 0x0303 without supported_versions is TLS 1.2 even though the
// ClientHello advertised TLS 1.3.
TEST(Decode, VersionRequiresSupportedVersions)
{
    auto cfg = tls12_ecdhe_rsa();
    cfg.client.versions = {version::tls13, version::tls12};
    auto v = decode_transcript(encode_scenario_transcript(cfg, 9));
    ASSERT_TRUE(v.server_hello);
    EXPECT_EQ(v.server_hello->selected_version, version::tls12);
}

TEST(Decode, RecordLayerViolationsAreMalformed)
{
    Transcript t;
    t.flows.push_back({Direction::client_to_server, 0.0, {0x16, 0x03, 0x01, 0x00, 0x00}});
    t.refresh_digest();
    EXPECT_EQ(decode_transcript(t).completeness, Completeness::malformed);
    t.flows[0].data = {0x63, 0x03, 0x01, 0x00, 0x01, 0x00};
    t.refresh_digest();
    auto v = decode_transcript(t);
    EXPECT_EQ(v.completeness, Completeness::malformed);
    EXPECT_FALSE(v.reasons.empty());
}

TEST(Encode, Deterministic)
{
    auto a = encode_scenario_transcript(tls13_hybrid(), 42);
    auto b = encode_scenario_transcript(tls13_hybrid(), 42);
    EXPECT_EQ(a, b);
    auto c = encode_scenario_transcript(tls13_hybrid(), 43);
    EXPECT_NE(a.digest, c.digest);
}

TEST(Encode, UnsupportedCombinationsRejected)
{
    auto c = tls12_ecdhe_rsa();
    c.client.key_share_groups = {group::x25519};
    EXPECT_EQ(error_code([&] { encode_scenario_transcript(c, 1); }), "encode_error");
    c = tls12_ecdhe_rsa();
    c.hrr_group = group::x25519;
    EXPECT_EQ(error_code([&] { encode_scenario_transcript(c, 1); }), "encode_error");
    c = tls12_ecdhe_rsa();
    c.cipher_suite = 0x009c;
    EXPECT_EQ(error_code([&] { encode_scenario_transcript(c, 1); }), "encode_error");
    auto t = tls13_hybrid();
    t.selected_group = group::secp256r1;
    EXPECT_EQ(error_code([&] { encode_scenario_transcript(t, 1); }), "encode_error");
}

TEST(Encode, WireConfigJsonRoundTrip)
{
    for (const auto& c : {tls13_hybrid(), tls12_ecdhe_rsa()}) {
        EXPECT_EQ(wire_config_from_json(to_json(c)), c);
    }
}

TEST(Transcript, JsonRoundTripAndDigestCheck)
{
    auto t = encode_scenario_transcript(tls13_hybrid(), 2);
    auto j = to_json(t);
    EXPECT_EQ(transcript_from_json(j), t);
    j["digest"] = std::string(64, '0');
    EXPECT_EQ(error_code([&] { transcript_from_json(j); }), "digest_mismatch");
    auto k = to_json(t);
    k["flows"][2]["timestamp"] = 0.0;
    EXPECT_NE(error_code([&] { transcript_from_json(k); }), "no error");
}

TEST(Mutation, ClientHelloSplitAcrossThreeRecords)
{
    auto t = encode_scenario_transcript(tls13_hybrid(), 11);
    auto spans = handshake_message_spans(t);
    ASSERT_EQ(spans.front().type, hs::client_hello);
    std::size_t ch_len = spans.front().end - spans.front().begin;
    auto m = apply_layout_mutation(t, LayoutMutation::fragment((ch_len + 2) / 3), 1);
    auto v = decode_transcript(m);
    EXPECT_TRUE(v.layout_flags.fragmented);
    EXPECT_EQ(v.messages, messages_of(t));
    EXPECT_EQ(v.completeness, Completeness::complete);
}

TEST(Mutation, FragmentHybrid64)
{
    auto t = encode_scenario_transcript(tls13_hybrid(), 12);
    auto m = apply_layout_mutation(t, LayoutMutation::fragment(64), 3);
    auto v = decode_transcript(m);
    EXPECT_TRUE(v.layout_flags.fragmented);
    EXPECT_EQ(v.messages, messages_of(t));
    EXPECT_EQ(apply_layout_mutation(t, LayoutMutation::fragment(64), 3), m);
}

TEST(Mutation, CoalesceTls12)
{
    auto t = encode_scenario_transcript(tls12_ecdhe_rsa(), 4);
    auto m = apply_layout_mutation(t, LayoutMutation::coalesce(), 0);
    auto v = decode_transcript(m);
    EXPECT_TRUE(v.layout_flags.coalesced);
    EXPECT_EQ(v.messages, messages_of(t));
    EXPECT_EQ(v.tls12_certificate_chain, decode_transcript(t).tls12_certificate_chain);
}

TEST(Mutation, CoalesceWithoutNeighboursFails)
{
    auto t = encode_scenario_transcript(tls13_hybrid(), 4);
    EXPECT_EQ(error_code([&] { apply_layout_mutation(t, LayoutMutation::coalesce(), 0); }), "mutation_error");
    EXPECT_EQ(error_code([&] { apply_layout_mutation(t, LayoutMutation::fragment(0), 0); }), "mutation_error");
    EXPECT_EQ(error_code([&] { apply_layout_mutation(t, LayoutMutation::segment_split(1), 0); }), "mutation_error");
}

TEST(Mutation, SegmentSplitKeepsRecords)
{
    auto t = encode_scenario_transcript(tls13_hybrid(), 6);
    auto m = apply_layout_mutation(t, LayoutMutation::segment_split(4), 6);
    EXPECT_GT(m.flows.size(), t.flows.size());
    auto v = decode_transcript(m);
    EXPECT_EQ(v.messages, messages_of(t));
    EXPECT_FALSE(v.layout_flags.fragmented);
    EXPECT_EQ(v.completeness, Completeness::complete);
}

TEST(Truncation, Cuts)
{
    auto t = encode_scenario_transcript(tls13_hybrid(), 8);
    auto pre = truncate_transcript(t, TruncationCut::pre_serverhello());
    EXPECT_TRUE(pre.declared_truncated);
    EXPECT_EQ(decode_transcript(pre).completeness, Completeness::truncated_pre_serverhello);

    auto zero = truncate_transcript(t, TruncationCut::byte_offset(0));
    EXPECT_TRUE(zero.flows.empty());
    EXPECT_TRUE(zero.declared_truncated);

    auto post = truncate_transcript(t, TruncationCut::post_serverhello());
    auto pv = decode_transcript(post);
    auto full = decode_transcript(t);
    ASSERT_TRUE(pv.server_hello);
    EXPECT_EQ(pv.completeness, Completeness::truncated_post_serverhello);
    // Oracle: the full decode's messages up to and including ServerHello.
    auto sh_pos = std::find_if(full.messages.begin(), full.messages.end(),
                               [](const HandshakeMessage& m) { return m.type == hs::server_hello; });
    std::vector<HandshakeMessage> expected(full.messages.begin(), sh_pos + 1);
    EXPECT_EQ(pv.messages, expected);

    EXPECT_EQ(error_code([&] { truncate_transcript(t, TruncationCut::byte_offset(t.total_bytes() + 1)); }),
              "truncation_error");
}

// Every prefix decodes to a subset of the full decode: messages form a prefix
// and decoded hello fields never change value.
TEST(Truncation, MonotoneAtEveryOffset)
{
    auto t = encode_scenario_transcript(tls12_ecdhe_rsa(), 10);
    auto full = decode_transcript(t);
    for (std::size_t n = 0; n <= t.total_bytes(); n += 7) {
        auto v = decode_transcript(truncate_transcript(t, TruncationCut::byte_offset(n)));
        ASSERT_NE(v.completeness, Completeness::malformed) << n;
        ASSERT_LE(v.messages.size(), full.messages.size());
        for (std::size_t i = 0; i < v.messages.size(); ++i) {
            ASSERT_EQ(v.messages[i], full.messages[i]) << n;
        }
        if (v.server_hello) {
            EXPECT_EQ(v.server_hello->selected_cipher_suite, full.server_hello->selected_cipher_suite);
        }
        if (v.tls12_certificate_chain) {
            EXPECT_EQ(v.tls12_certificate_chain, full.tls12_certificate_chain);
        }
    }
}

TEST(Property, RandomSpecsRoundTrip)
{
    std::mt19937_64 rng(2024);
    for (std::size_t i = 0; i < 200; ++i) {
        auto cfg = pqobs::testing::random_wire_config(rng, i);
        auto v = decode_transcript(encode_scenario_transcript(cfg, i));
        auto bad = pqobs::testing::field_recovery_mismatches(cfg, v);
        ASSERT_TRUE(bad.empty()) << bad.front() << "\n" << to_json(cfg).dump();
    }
}

TEST(Property, RandomLayoutMutationsPreserveMessages)
{
    std::mt19937_64 rng(77);
    for (std::size_t i = 0; i < 200; ++i) {
        auto cfg = pqobs::testing::random_wire_config(rng, i);
        auto t = encode_scenario_transcript(cfg, i);
        auto base = messages_of(t);
        auto m = t;
        std::size_t depth = 1 + rng() % 4;
        for (std::size_t d = 0; d < depth; ++d) {
            LayoutMutation mut;
            switch (rng() % 3) {
            case 0: mut = LayoutMutation::fragment(16 + rng() % 600); break;
            case 1: mut = LayoutMutation::coalesce(); break;
            default: mut = LayoutMutation::segment_split(2 + rng() % 6); break;
            }
            try {
                m = apply_layout_mutation(m, mut, rng());
            } catch (const Error& e) {
                ASSERT_EQ(e.code(), "mutation_error");
            }
        }
        ASSERT_EQ(messages_of(m), base) << i;
    }
}

TEST(Property, RandomBytesDecodeTotally)
{
    std::mt19937_64 rng(99);
    for (std::size_t i = 0; i < 300; ++i) {
        Transcript t;
        std::size_t flows = 1 + rng() % 4;
        for (std::size_t f = 0; f < flows; ++f) {
            Bytes data = random_bytes(rng, rng() % 400);
            // Half the time start with a plausible record header so the
            // decoder gets past the first checks.
            if (i % 2 == 0 && data.size() >= 5) {
                data[0] = 0x16;
                data[1] = 0x03;
                data[2] = 0x03;
            }
            t.flows.push_back({f % 2 == 0 ? Direction::client_to_server : Direction::server_to_client,
                               static_cast<double>(f), data});
        }
        t.refresh_digest();
        auto v = decode_transcript(t);
        EXPECT_NE(v.completeness, Completeness::complete);
    }
}
