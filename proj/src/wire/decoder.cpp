// SPDX-License-Identifier: Apache-2.0
#include "pqobs/wire/decoder.hpp"

#include <algorithm>
#include <map>

#include "pqobs/common/error.hpp"
#include "pqobs/wire/constants.hpp"

namespace pqobs::wire {

namespace {

constexpr std::size_t max_handshake_message = 1u << 20;

struct DirectionState {
    Direction direction;
    Bytes buf;
    std::size_t pos = 0;
    bool ccs_seen = false;
    bool stopped = false;
    std::size_t stream_offset = 0;  // offset of buf[pos] within the direction stream
    std::size_t next_record_id = 0;

    // Handshake reassembly: pending bytes and the records they came from.
    Bytes hs_buf;
    std::vector<std::pair<std::size_t, std::size_t>> hs_segments;  // (record id, byte count)
    std::map<std::size_t, int> messages_per_record;
};

class Decoder {
public:
    HandshakeView run(const Transcript& t)
    {
        for (const auto& f : t.flows) {
            auto& st = state(f.direction);
            if (st.stopped) {
                continue;
            }
            st.buf.insert(st.buf.end(), f.data.begin(), f.data.end());
            drain(st);
        }
        finish(client_);
        finish(server_);
        classify();
        return std::move(view_);
    }

private:
    DirectionState& state(Direction d) { return d == Direction::client_to_server ? client_ : server_; }
    RecordCounts& counts(Direction d)
    {
        return d == Direction::client_to_server ? view_.client_records : view_.server_records;
    }

    void malformed(DirectionState& st, const std::string& why)
    {
        if (!malformed_) {
            view_.reasons.push_back(std::string(to_string(st.direction)) + " offset " +
                                    std::to_string(st.stream_offset) + ": " + why);
        }
        malformed_ = true;
        st.stopped = true;
    }

    void drain(DirectionState& st)
    {
        while (!st.stopped && st.buf.size() - st.pos >= 5) {
            ByteReader r(ByteView(st.buf).subspan(st.pos));
            std::uint8_t type = 0;
            std::uint16_t rec_version = 0;
            std::uint16_t len = 0;
            r.read_u8(type);
            r.read_u16(rec_version);
            r.read_u16(len);
            if (type < content_type::change_cipher_spec || type > content_type::application_data) {
                malformed(st, "invalid record content type " + std::to_string(type));
                return;
            }
            if ((rec_version >> 8) != 3) {
                malformed(st, "record version major is not 3");
                return;
            }
            bool encrypted = type == content_type::application_data ||
                             (st.ccs_seen && (type == content_type::handshake || type == content_type::alert));
            std::size_t limit = encrypted ? max_record_payload : max_plaintext_fragment;
            if (len > limit) {
                malformed(st, "record length " + std::to_string(len) + " exceeds limit");
                return;
            }
            if (r.remaining() < len) {
                return;  // wait for more bytes
            }
            ByteView payload;
            r.read_view(len, payload);
            process_record(st, type, payload);
            st.pos += 5 + len;
            st.stream_offset += 5 + len;
        }
    }

    void process_record(DirectionState& st, std::uint8_t type, ByteView payload)
    {
        auto& c = counts(st.direction);
        auto record_id = st.next_record_id++;
        switch (type) {
        case content_type::change_cipher_spec:
            if (payload.size() != 1 || payload[0] != 1) {
                malformed(st, "invalid ChangeCipherSpec payload");
                return;
            }
            ++c.change_cipher_spec;
            // In TLS 1.3 the CCS is a compatibility no-op; the protected
            // flight arrives as application_data records instead.
            if (!tls13_negotiating()) {
                st.ccs_seen = true;
            }
            return;
        case content_type::alert:
            ++c.alert;
            if (!st.ccs_seen) {
                if (payload.size() % 2 != 0 || payload.empty()) {
                    malformed(st, "invalid alert record length");
                    return;
                }
                for (std::size_t i = 0; i < payload.size(); i += 2) {
                    view_.alerts.push_back({st.direction, payload[i], payload[i + 1]});
                }
            }
            return;
        case content_type::application_data:
            ++c.application_data;
            if (final_server_hello_known()) {
                ++c.application_data_after_server_hello;
            }
            return;
        case content_type::handshake:
            if (st.ccs_seen) {
                ++c.handshake_encrypted;
                return;
            }
            if (payload.empty()) {
                malformed(st, "zero-length handshake record");
                return;
            }
            ++c.handshake_plaintext;
            feed_handshake(st, record_id, payload);
            return;
        default:
            return;
        }
    }

    void feed_handshake(DirectionState& st, std::size_t record_id, ByteView payload)
    {
        st.hs_buf.insert(st.hs_buf.end(), payload.begin(), payload.end());
        st.hs_segments.emplace_back(record_id, payload.size());
        while (!st.stopped && st.hs_buf.size() >= 4) {
            std::uint32_t len = static_cast<std::uint32_t>(st.hs_buf[1]) << 16 |
                                static_cast<std::uint32_t>(st.hs_buf[2]) << 8 | st.hs_buf[3];
            if (len > max_handshake_message) {
                malformed(st, "handshake message length " + std::to_string(len) + " is implausible");
                return;
            }
            if (st.hs_buf.size() < 4 + len) {
                return;
            }
            HandshakeMessage msg;
            msg.direction = st.direction;
            msg.type = st.hs_buf[0];
            msg.body.assign(st.hs_buf.begin() + 4, st.hs_buf.begin() + 4 + len);
            st.hs_buf.erase(st.hs_buf.begin(), st.hs_buf.begin() + 4 + len);
            note_records(st, 4 + len);
            interpret(st, msg);
            view_.messages.push_back(std::move(msg));
        }
    }

    // Consumes `n` bytes from the front of the segment list, recording which
    // records the completed message touched.
    void note_records(DirectionState& st, std::size_t n)
    {
        std::size_t spanned = 0;
        while (n > 0 && !st.hs_segments.empty()) {
            auto& [rid, count] = st.hs_segments.front();
            auto take = std::min(n, count);
            if (++st.messages_per_record[rid] > 1) {
                view_.layout_flags.coalesced = true;
            }
            ++spanned;
            n -= take;
            count -= take;
            if (count == 0) {
                st.hs_segments.erase(st.hs_segments.begin());
            }
        }
        if (spanned > 1) {
            view_.layout_flags.fragmented = true;
        }
    }

    bool tls13_negotiating() const
    {
        const auto& sh = view_.server_hello;
        return sh && (sh->is_hrr || sh->selected_version == version::tls13);
    }

    bool final_server_hello_known() const
    {
        return view_.server_hello && (!view_.server_hello->is_hrr || view_.second_server_hello);
    }

    void interpret(DirectionState& st, const HandshakeMessage& msg)
    {
        std::string err;
        bool client = st.direction == Direction::client_to_server;
        switch (msg.type) {
        case hs::client_hello: {
            if (!client) {
                malformed(st, "ClientHello sent by server");
                return;
            }
            auto ch = parse_client_hello(msg.body, err);
            if (!ch) {
                malformed(st, err);
                return;
            }
            if (!view_.client_hello) {
                view_.client_hello = std::move(ch);
            } else if (view_.hrr_seen() && !view_.second_client_hello) {
                view_.second_client_hello = std::move(ch);
            } else {
                view_.reasons.push_back("unexpected additional ClientHello");
            }
            return;
        }
        case hs::server_hello: {
            if (client) {
                malformed(st, "ServerHello sent by client");
                return;
            }
            auto sh = parse_server_hello(msg.body, err);
            if (!sh) {
                malformed(st, err);
                return;
            }
            if (!view_.server_hello) {
                view_.server_hello = std::move(sh);
            } else if (view_.server_hello->is_hrr && !view_.second_server_hello) {
                if (sh->is_hrr) {
                    malformed(st, "second HelloRetryRequest");
                    return;
                }
                view_.second_server_hello = std::move(sh);
            } else {
                view_.reasons.push_back("unexpected additional ServerHello");
            }
            return;
        }
        case hs::certificate: {
            auto chain = parse_tls12_certificate(msg.body, err);
            if (!chain) {
                malformed(st, err);
                return;
            }
            if (client) {
                view_.tls12_client_certificate_chain = std::move(chain);
            } else {
                view_.tls12_certificate_chain = std::move(chain);
            }
            return;
        }
        case hs::server_key_exchange:
            if (!client) {
                view_.tls12_server_key_exchange_seen = true;
                view_.tls12_server_key_exchange_group = parse_tls12_server_key_exchange_group(msg.body, err);
            }
            return;
        case hs::certificate_request:
            if (!client) {
                view_.tls12_certificate_request_seen = true;
            }
            return;
        case hs::server_hello_done:
            if (!client) {
                view_.tls12_server_hello_done_seen = true;
            }
            return;
        case hs::client_key_exchange:
            if (client) {
                view_.tls12_client_key_exchange_seen = true;
            }
            return;
        default:
            return;
        }
    }

    void finish(DirectionState& st)
    {
        if (st.stopped) {
            return;
        }
        auto left = st.buf.size() - st.pos;
        if (left == 0) {
            return;
        }
        if (left < 5) {
            view_.reasons.push_back(std::string(to_string(st.direction)) + ": stream ends inside a record header");
            return;
        }
        // A partial final record: its plaintext handshake bytes are real wire
        // bytes, so complete messages inside it are still decoded.
        std::uint8_t type = st.buf[st.pos];
        view_.reasons.push_back(std::string(to_string(st.direction)) + ": stream ends inside a record");
        if (type == content_type::handshake && !st.ccs_seen && left > 5) {
            ByteView payload = ByteView(st.buf).subspan(st.pos + 5);
            feed_handshake(st, st.next_record_id++, payload);
        }
    }

    void classify()
    {
        if (malformed_) {
            view_.completeness = Completeness::malformed;
            return;
        }
        if (!view_.server_hello) {
            view_.completeness = Completeness::truncated_pre_serverhello;
            return;
        }
        const auto* fsh = view_.final_server_hello();
        if (fsh == nullptr) {
            view_.completeness = Completeness::truncated_post_serverhello;
            view_.reasons.push_back("HelloRetryRequest without a following ServerHello");
            return;
        }
        bool complete = false;
        if (fsh->selected_version == version::tls13) {
            complete = view_.server_records.application_data_after_server_hello > 0 &&
                       view_.client_records.application_data_after_server_hello > 0;
        } else {
            complete = view_.tls12_server_hello_done_seen && view_.tls12_client_key_exchange_seen &&
                       view_.client_records.change_cipher_spec > 0 && view_.server_records.change_cipher_spec > 0 &&
                       view_.client_records.handshake_encrypted > 0 && view_.server_records.handshake_encrypted > 0;
        }
        view_.completeness = complete ? Completeness::complete : Completeness::truncated_post_serverhello;
    }

    DirectionState client_{Direction::client_to_server};
    DirectionState server_{Direction::server_to_client};
    HandshakeView view_;
    bool malformed_ = false;
};

json hello_json(const ClientHelloInfo& ch)
{
    json j{{"legacy_version", version_name(ch.legacy_version)},
           {"offered_versions", json::array()},
           {"offered_cipher_suites", ch.offered_cipher_suites},
           {"offered_groups", ch.offered_groups},
           {"key_share_groups", ch.key_share_groups},
           {"signature_schemes", ch.signature_schemes},
           {"extensions_present", ch.extensions_present},
           {"psk_offered", ch.psk_offered},
           {"psk_modes", ch.psk_modes}};
    for (auto v : ch.offered_versions) {
        j["offered_versions"].push_back(version_name(v));
    }
    j["sni"] = ch.sni ? json(*ch.sni) : json(nullptr);
    return j;
}

json hello_json(const ServerHelloInfo& sh)
{
    json j{{"selected_version", version_name(sh.selected_version)},
           {"supported_versions_present", sh.supported_versions_present},
           {"selected_cipher_suite", sh.selected_cipher_suite},
           {"is_hrr", sh.is_hrr},
           {"psk_selected", sh.psk_selected},
           {"extensions_present", sh.extensions_present}};
    j["key_share_group"] = sh.key_share_group ? json(*sh.key_share_group) : json(nullptr);
    return j;
}

json counts_json(const RecordCounts& c)
{
    return json{{"handshake_plaintext", c.handshake_plaintext},
                {"handshake_encrypted", c.handshake_encrypted},
                {"change_cipher_spec", c.change_cipher_spec},
                {"alert", c.alert},
                {"application_data", c.application_data},
                {"application_data_after_server_hello", c.application_data_after_server_hello}};
}

}  // namespace

std::string_view to_string(Completeness c)
{
    switch (c) {
    case Completeness::complete:
        return "complete";
    case Completeness::truncated_pre_serverhello:
        return "truncated_pre_serverhello";
    case Completeness::truncated_post_serverhello:
        return "truncated_post_serverhello";
    case Completeness::malformed:
        return "malformed";
    }
    return "malformed";
}

Completeness completeness_from_string(std::string_view s)
{
    for (auto c : {Completeness::complete, Completeness::truncated_pre_serverhello,
                   Completeness::truncated_post_serverhello, Completeness::malformed}) {
        if (to_string(c) == s) {
            return c;
        }
    }
    throw Error("schema_violation", "unknown completeness status '" + std::string(s) + "'");
}

const ServerHelloInfo* HandshakeView::final_server_hello() const
{
    if (!server_hello) {
        return nullptr;
    }
    if (!server_hello->is_hrr) {
        return &*server_hello;
    }
    return second_server_hello ? &*second_server_hello : nullptr;
}

HandshakeView decode_transcript(const Transcript& t)
{
    return Decoder().run(t);
}

json to_json(const HandshakeView& v)
{
    json msgs = json::array();
    for (const auto& m : v.messages) {
        msgs.push_back({{"direction", to_string(m.direction)}, {"type", m.type}, {"length", m.body.size()}});
    }
    json j{{"messages", msgs},
           {"completeness", to_string(v.completeness)},
           {"layout_flags", {{"fragmented", v.layout_flags.fragmented}, {"coalesced", v.layout_flags.coalesced}}},
           {"tls12_certificate_request_seen", v.tls12_certificate_request_seen},
           {"client_records", counts_json(v.client_records)},
           {"server_records", counts_json(v.server_records)},
           {"reasons", v.reasons}};
    j["client_hello"] = v.client_hello ? hello_json(*v.client_hello) : json(nullptr);
    j["second_client_hello"] = v.second_client_hello ? hello_json(*v.second_client_hello) : json(nullptr);
    j["server_hello"] = v.server_hello ? hello_json(*v.server_hello) : json(nullptr);
    j["second_server_hello"] = v.second_server_hello ? hello_json(*v.second_server_hello) : json(nullptr);
    j["tls12_server_key_exchange_group"] =
        v.tls12_server_key_exchange_group ? json(*v.tls12_server_key_exchange_group) : json(nullptr);
    if (v.tls12_certificate_chain) {
        json chain = json::array();
        for (const auto& c : *v.tls12_certificate_chain) {
            chain.push_back(to_hex(c));
        }
        j["tls12_certificate_chain"] = chain;
    } else {
        j["tls12_certificate_chain"] = nullptr;
    }
    json alerts = json::array();
    for (const auto& a : v.alerts) {
        alerts.push_back({{"direction", to_string(a.direction)}, {"level", a.level}, {"description", a.description}});
    }
    j["alerts"] = alerts;
    return j;
}

}  // namespace pqobs::wire
