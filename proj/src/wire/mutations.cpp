// SPDX-License-Identifier: Apache-2.0
#include "pqobs/wire/mutations.hpp"

#include <algorithm>
#include <random>

#include "pqobs/common/error.hpp"
#include "pqobs/wire/constants.hpp"
#include "pqobs/wire/decoder.hpp"

namespace pqobs::wire {

namespace {

struct Record {
    std::uint8_t type = 0;
    std::uint16_t version = 0;
    Bytes payload;
    bool plaintext_handshake = false;
};

struct RecordFlow {
    Direction direction;
    double timestamp;
    std::vector<Record> records;
};

[[noreturn]] void mutation_error(const std::string& why) { throw Error("mutation_error", why); }

// Parses whole records from one flow's bytes; false if the bytes do not end
// on a record boundary.
bool split_records(ByteView data, bool& ccs_seen, std::vector<Record>& out)
{
    ByteReader r(data);
    while (!r.empty()) {
        Record rec;
        std::uint16_t len = 0;
        ByteView payload;
        if (!r.read_u8(rec.type) || !r.read_u16(rec.version) || !r.read_u16(len) || !r.read_view(len, payload)) {
            return false;
        }
        rec.payload.assign(payload.begin(), payload.end());
        rec.plaintext_handshake = rec.type == content_type::handshake && !ccs_seen;
        if (rec.type == content_type::change_cipher_spec) {
            ccs_seen = true;
        }
        out.push_back(std::move(rec));
    }
    return true;
}

// Regroups adjacent same-direction flows until every flow holds whole
// records, then splits each flow into records.
std::vector<RecordFlow> to_record_flows(const Transcript& t)
{
    std::vector<RecordFlow> out;
    bool ccs[2] = {false, false};
    Bytes pending;
    for (std::size_t i = 0; i < t.flows.size(); ++i) {
        const auto& f = t.flows[i];
        pending.insert(pending.end(), f.data.begin(), f.data.end());
        bool last_of_run = i + 1 == t.flows.size() || t.flows[i + 1].direction != f.direction;
        int d = f.direction == Direction::client_to_server ? 0 : 1;
        bool saved = ccs[d];
        std::vector<Record> records;
        if (split_records(pending, ccs[d], records)) {
            out.push_back({f.direction, f.timestamp, std::move(records)});
            pending.clear();
            continue;
        }
        ccs[d] = saved;
        if (last_of_run) {
            mutation_error("flows of " + std::string(to_string(f.direction)) + " do not end on a record boundary");
        }
    }
    return out;
}

Transcript from_record_flows(const std::vector<RecordFlow>& flows, const Transcript& original, const std::string& tag)
{
    Transcript t;
    for (const auto& rf : flows) {
        ByteWriter w;
        for (const auto& rec : rf.records) {
            w.u8(rec.type);
            w.u16(rec.version);
            w.u16(static_cast<std::uint16_t>(rec.payload.size()));
            w.bytes(rec.payload);
        }
        t.flows.push_back({rf.direction, rf.timestamp, w.take()});
    }
    t.artifact_id = original.artifact_id + "+" + tag;
    t.declared_truncated = original.declared_truncated;
    t.refresh_digest();
    return t;
}

Transcript fragment(const Transcript& t, std::size_t max_len, std::uint64_t seed)
{
    if (max_len < 1) {
        mutation_error("fragment length must be at least 1");
    }
    std::mt19937_64 rng(seed);
    auto flows = to_record_flows(t);
    bool changed = false;
    std::size_t min_len = std::max<std::size_t>(1, (max_len + 1) / 2);
    for (auto& rf : flows) {
        std::vector<Record> out;
        for (auto& rec : rf.records) {
            if (!rec.plaintext_handshake || rec.payload.size() <= max_len) {
                out.push_back(std::move(rec));
                continue;
            }
            changed = true;
            std::size_t pos = 0;
            while (pos < rec.payload.size()) {
                std::uniform_int_distribution<std::size_t> pick(min_len, max_len);
                auto n = std::min(pick(rng), rec.payload.size() - pos);
                Record piece = rec;
                piece.payload.assign(rec.payload.begin() + static_cast<std::ptrdiff_t>(pos),
                                     rec.payload.begin() + static_cast<std::ptrdiff_t>(pos + n));
                out.push_back(std::move(piece));
                pos += n;
            }
        }
        rf.records = std::move(out);
    }
    if (!changed) {
        mutation_error("no plaintext handshake record is longer than " + std::to_string(max_len) + " bytes");
    }
    return from_record_flows(flows, t, "fragment(" + std::to_string(max_len) + ")");
}

Transcript coalesce(const Transcript& t)
{
    auto flows = to_record_flows(t);
    bool merged = false;
    for (auto& rf : flows) {
        std::vector<Record> out;
        for (auto& rec : rf.records) {
            if (rec.plaintext_handshake && !out.empty() && out.back().plaintext_handshake &&
                out.back().payload.size() + rec.payload.size() <= max_plaintext_fragment) {
                auto& prev = out.back().payload;
                prev.insert(prev.end(), rec.payload.begin(), rec.payload.end());
                merged = true;
                continue;
            }
            out.push_back(std::move(rec));
        }
        rf.records = std::move(out);
    }
    auto result = from_record_flows(flows, t, "coalesce");
    if (!merged || !decode_transcript(result).layout_flags.coalesced) {
        mutation_error("no two handshake messages share a flight, nothing to coalesce");
    }
    return result;
}

Transcript segment_split(const Transcript& t, std::size_t n, std::uint64_t seed)
{
    if (n < 2) {
        mutation_error("segment_split needs n >= 2");
    }
    std::mt19937_64 rng(seed);
    Transcript out;
    bool changed = false;
    for (const auto& f : t.flows) {
        if (f.data.size() < 2) {
            out.flows.push_back(f);
            continue;
        }
        auto pieces = std::min(n, f.data.size());
        std::vector<std::size_t> cuts;
        std::uniform_int_distribution<std::size_t> pick(1, f.data.size() - 1);
        while (cuts.size() + 1 < pieces) {
            auto c = pick(rng);
            if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) {
                cuts.push_back(c);
            }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.push_back(f.data.size());
        std::size_t prev = 0;
        for (auto c : cuts) {
            out.flows.push_back({f.direction, f.timestamp,
                                 Bytes(f.data.begin() + static_cast<std::ptrdiff_t>(prev),
                                       f.data.begin() + static_cast<std::ptrdiff_t>(c))});
            prev = c;
        }
        changed = changed || pieces > 1;
    }
    if (!changed) {
        mutation_error("no flow has at least two bytes to split");
    }
    out.artifact_id = t.artifact_id + "+segment_split(" + std::to_string(n) + ")";
    out.declared_truncated = t.declared_truncated;
    out.refresh_digest();
    return out;
}

Transcript prefix(const Transcript& t, std::size_t n, const std::string& tag)
{
    Transcript out;
    std::size_t pos = 0;
    for (const auto& f : t.flows) {
        if (pos >= n) {
            break;
        }
        auto take = std::min(f.data.size(), n - pos);
        if (take > 0) {
            out.flows.push_back({f.direction, f.timestamp, Bytes(f.data.begin(), f.data.begin() + static_cast<std::ptrdiff_t>(take))});
        }
        pos += f.data.size();
    }
    out.artifact_id = t.artifact_id + "+" + tag;
    out.declared_truncated = true;
    out.refresh_digest();
    return out;
}

}  // namespace

std::string LayoutMutation::describe() const
{
    switch (kind) {
    case Kind::fragment:
        return "fragment(" + std::to_string(parameter) + ")";
    case Kind::coalesce:
        return "coalesce";
    case Kind::segment_split:
        return "segment_split(" + std::to_string(parameter) + ")";
    }
    return "?";
}

std::string TruncationCut::describe() const
{
    switch (kind) {
    case Kind::pre_serverhello:
        return "pre_serverhello";
    case Kind::post_serverhello:
        return "post_serverhello";
    case Kind::byte_offset:
        return "byte_offset(" + std::to_string(offset) + ")";
    }
    return "?";
}

nlohmann::json to_json(const LayoutMutation& m)
{
    switch (m.kind) {
    case LayoutMutation::Kind::fragment:
        return {{"kind", "fragment"}, {"max_record_len", m.parameter}};
    case LayoutMutation::Kind::coalesce:
        return {{"kind", "coalesce"}};
    case LayoutMutation::Kind::segment_split:
        return {{"kind", "segment_split"}, {"n", m.parameter}};
    }
    return {};
}

LayoutMutation layout_mutation_from_json(const nlohmann::json& j)
{
    auto kind = j.at("kind").get<std::string>();
    if (kind == "fragment") {
        return LayoutMutation::fragment(j.at("max_record_len").get<std::size_t>());
    }
    if (kind == "coalesce") {
        return LayoutMutation::coalesce();
    }
    if (kind == "segment_split") {
        return LayoutMutation::segment_split(j.at("n").get<std::size_t>());
    }
    throw Error("schema_violation", "unknown layout mutation '" + kind + "'");
}

nlohmann::json to_json(const TruncationCut& c)
{
    switch (c.kind) {
    case TruncationCut::Kind::pre_serverhello:
        return {{"kind", "pre_serverhello"}};
    case TruncationCut::Kind::post_serverhello:
        return {{"kind", "post_serverhello"}};
    case TruncationCut::Kind::byte_offset:
        return {{"kind", "byte_offset"}, {"offset", c.offset}};
    }
    return {};
}

TruncationCut truncation_cut_from_json(const nlohmann::json& j)
{
    auto kind = j.at("kind").get<std::string>();
    if (kind == "pre_serverhello") {
        return TruncationCut::pre_serverhello();
    }
    if (kind == "post_serverhello") {
        return TruncationCut::post_serverhello();
    }
    if (kind == "byte_offset") {
        return TruncationCut::byte_offset(j.at("offset").get<std::size_t>());
    }
    throw Error("schema_violation", "unknown truncation cut '" + kind + "'");
}

Transcript apply_layout_mutation(const Transcript& t, const LayoutMutation& m, std::uint64_t seed)
{
    if (decode_transcript(t).completeness == Completeness::malformed) {
        mutation_error("transcript " + t.artifact_id + " is malformed");
    }
    switch (m.kind) {
    case LayoutMutation::Kind::fragment:
        return fragment(t, m.parameter, seed);
    case LayoutMutation::Kind::coalesce:
        return coalesce(t);
    case LayoutMutation::Kind::segment_split:
        return segment_split(t, m.parameter, seed);
    }
    mutation_error("unknown mutation");
}

std::vector<MessageSpan> handshake_message_spans(const Transcript& t)
{
    // Per direction: the global offset of every stream byte.
    std::vector<std::size_t> gpos[2];
    Bytes stream[2];
    std::size_t global = 0;
    for (const auto& f : t.flows) {
        int d = f.direction == Direction::client_to_server ? 0 : 1;
        for (auto b : f.data) {
            stream[d].push_back(b);
            gpos[d].push_back(global++);
        }
    }
    std::vector<MessageSpan> spans;
    for (int d = 0; d < 2; ++d) {
        // Plaintext handshake payload bytes, with stream index and the stream
        // index of their record header.
        std::vector<std::pair<std::size_t, std::size_t>> hs_bytes;
        Bytes hs;
        bool ccs = false;
        ByteReader r(stream[d]);
        while (r.remaining() >= 5) {
            auto rec_start = r.offset();
            std::uint8_t type = 0;
            std::uint16_t ver = 0;
            std::uint16_t len = 0;
            r.read_u8(type);
            r.read_u16(ver);
            r.read_u16(len);
            auto body_start = r.offset();
            std::size_t avail = std::min<std::size_t>(len, r.remaining());
            if (type == content_type::handshake && !ccs) {
                for (std::size_t i = 0; i < avail; ++i) {
                    hs.push_back(stream[d][body_start + i]);
                    hs_bytes.emplace_back(body_start + i, rec_start);
                }
            }
            if (type == content_type::change_cipher_spec) {
                ccs = true;
            }
            r.skip(avail);
        }
        std::size_t pos = 0;
        while (hs.size() - pos >= 4) {
            std::size_t len = static_cast<std::size_t>(hs[pos + 1]) << 16 | static_cast<std::size_t>(hs[pos + 2]) << 8 |
                              hs[pos + 3];
            if (hs.size() - pos < 4 + len) {
                break;
            }
            MessageSpan s;
            s.direction = d == 0 ? Direction::client_to_server : Direction::server_to_client;
            s.type = hs[pos];
            s.record_begin = gpos[d][hs_bytes[pos].second];
            s.begin = gpos[d][hs_bytes[pos].first];
            s.end = gpos[d][hs_bytes[pos + 3 + len].first] + 1;
            if (s.type == hs::server_hello && len >= 34) {
                s.is_hrr = std::equal(hello_retry_request_random.begin(), hello_retry_request_random.end(),
                                      hs.begin() + static_cast<std::ptrdiff_t>(pos + 6));
            }
            spans.push_back(s);
            pos += 4 + len;
        }
    }
    std::sort(spans.begin(), spans.end(), [](const MessageSpan& a, const MessageSpan& b) { return a.end < b.end; });
    return spans;
}

Transcript truncate_transcript(const Transcript& t, const TruncationCut& cut)
{
    switch (cut.kind) {
    case TruncationCut::Kind::byte_offset:
        if (cut.offset > t.total_bytes()) {
            throw Error("truncation_error", "byte offset " + std::to_string(cut.offset) + " beyond transcript length " +
                                                std::to_string(t.total_bytes()));
        }
        return prefix(t, cut.offset, cut.describe());
    case TruncationCut::Kind::pre_serverhello:
        for (const auto& s : handshake_message_spans(t)) {
            if (s.type == hs::server_hello && s.direction == Direction::server_to_client) {
                return prefix(t, s.record_begin, cut.describe());
            }
        }
        throw Error("truncation_error", "transcript " + t.artifact_id + " has no ServerHello to cut before");
    case TruncationCut::Kind::post_serverhello:
        for (const auto& s : handshake_message_spans(t)) {
            if (s.type == hs::server_hello && s.direction == Direction::server_to_client && !s.is_hrr) {
                return prefix(t, s.end, cut.describe());
            }
        }
        throw Error("truncation_error", "transcript " + t.artifact_id + " has no ServerHello to cut after");
    }
    throw Error("truncation_error", "unknown cut");
}

}  // namespace pqobs::wire
