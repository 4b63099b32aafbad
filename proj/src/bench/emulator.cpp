// SPDX-License-Identifier: Apache-2.0
#include "pqobs/bench/emulator.hpp"

#include <algorithm>
#include <deque>

#include "pqobs/common/error.hpp"
#include "pqobs/wire/constants.hpp"
#include "pqobs/wire/encoder.hpp"
#include "pqobs/wire/messages.hpp"

namespace pqobs::bench {

using nlohmann::json;

namespace {

constexpr std::uint8_t alert_handshake_failure = 40;
constexpr std::uint8_t alert_illegal_parameter = 47;
constexpr std::uint8_t alert_protocol_version = 70;

bool contains(const std::vector<std::uint16_t>& v, std::uint16_t x)
{
    return std::find(v.begin(), v.end(), x) != v.end();
}

bool ecdhe_curve(std::uint16_t g)
{
    return g == wire::group::x25519 || g == wire::group::secp256r1 || g == wire::group::secp384r1;
}

std::vector<std::string> hex_list(const std::vector<Bytes>& v)
{
    std::vector<std::string> out;
    for (const auto& b : v) {
        out.push_back(to_hex(b));
    }
    return out;
}

}  // namespace

std::string_view to_string(FailureMode f)
{
    switch (f) {
    case FailureMode::none: return "none";
    case FailureMode::timeout: return "timeout";
    case FailureMode::refuse: return "refuse";
    case FailureMode::alert: return "alert";
    }
    return "none";
}

FailureMode failure_mode_from_string(std::string_view s)
{
    for (auto f : {FailureMode::none, FailureMode::timeout, FailureMode::refuse, FailureMode::alert}) {
        if (to_string(f) == s) {
            return f;
        }
    }
    throw Error("invalid_config", "unknown failure mode '" + std::string(s) + "'");
}

json to_json(const EmulatorConfig& c)
{
    return {{"supported_groups", c.supported_groups},
            {"tls_versions", c.tls_versions},
            {"tls12_cipher_suites", c.tls12_cipher_suites},
            {"chain_hex", hex_list(c.chain)},
            {"mtls", c.mtls},
            {"latency_s", c.latency_s},
            {"failure", std::string(to_string(c.failure))},
            {"seed", c.seed}};
}

EmulatorConfig emulator_config_from_json(const json& j)
{
    EmulatorConfig c;
    c.supported_groups = j.at("supported_groups").get<std::vector<std::uint16_t>>();
    c.tls_versions = j.at("tls_versions").get<std::vector<std::uint16_t>>();
    c.tls12_cipher_suites = j.at("tls12_cipher_suites").get<std::vector<std::uint16_t>>();
    for (const auto& h : j.at("chain_hex")) {
        c.chain.push_back(from_hex(h.get<std::string>()));
    }
    c.mtls = j.at("mtls").get<bool>();
    c.latency_s = j.at("latency_s").get<double>();
    c.failure = failure_mode_from_string(j.at("failure").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

json to_json(const HandshakeRecord& r)
{
    json j = {{"connection_id", r.connection_id},
              {"offered_groups", r.offered_groups},
              {"version", r.version},
              {"cipher_suite", r.cipher_suite},
              {"hrr_sent", r.hrr_sent},
              {"client_auth_requested", r.client_auth_requested},
              {"outcome", r.outcome}};
    j["selected_group"] = r.selected_group ? json(*r.selected_group) : json(nullptr);
    return j;
}

ServerSession::ServerSession(const EmulatorConfig& cfg, std::uint64_t connection_id)
    : cfg_(cfg), connection_id_(connection_id), rng_(cfg.seed * 0x9E3779B97F4A7C15ULL + connection_id)
{
}

Bytes ServerSession::on_client_bytes(ByteView data)
{
    Bytes out;
    if (closed_) {
        return out;
    }
    record_buffer_.insert(record_buffer_.end(), data.begin(), data.end());
    // Peel complete records; only plaintext handshake bytes matter here.
    std::size_t pos = 0;
    while (record_buffer_.size() - pos >= 5) {
        std::size_t len = (std::size_t(record_buffer_[pos + 3]) << 8) | record_buffer_[pos + 4];
        if (record_buffer_.size() - pos < 5 + len) {
            break;
        }
        if (record_buffer_[pos] == wire::content_type::handshake) {
            handshake_buffer_.insert(handshake_buffer_.end(), record_buffer_.begin() + pos + 5,
                                     record_buffer_.begin() + pos + 5 + len);
        }
        pos += 5 + len;
    }
    record_buffer_.erase(record_buffer_.begin(), record_buffer_.begin() + pos);

    while (handshake_buffer_.size() >= 4 && !closed_) {
        std::size_t len = (std::size_t(handshake_buffer_[1]) << 16) | (std::size_t(handshake_buffer_[2]) << 8) |
                          handshake_buffer_[3];
        if (handshake_buffer_.size() < 4 + len) {
            break;
        }
        Bytes body(handshake_buffer_.begin() + 4, handshake_buffer_.begin() + 4 + len);
        std::uint8_t type = handshake_buffer_[0];
        handshake_buffer_.erase(handshake_buffer_.begin(), handshake_buffer_.begin() + 4 + len);
        if (type != wire::hs::client_hello) {
            continue;  // client flight after the server's: the probe never gets here
        }
        auto reply = on_client_hello(body);
        out.insert(out.end(), reply.begin(), reply.end());
    }
    return out;
}

Bytes ServerSession::alert(std::uint8_t description, const std::string& why)
{
    closed_ = true;
    if (!record_) {
        record_ = HandshakeRecord{};
        record_->connection_id = connection_id_;
    }
    record_->outcome = "alert:" + why;
    Bytes payload{2, description};
    return wire::frame_records(wire::content_type::alert, wire::version::tls12, payload);
}

Bytes ServerSession::on_client_hello(ByteView body)
{
    std::string err;
    auto ch = wire::parse_client_hello(body, err);
    if (!record_) {
        record_ = HandshakeRecord{};
        record_->connection_id = connection_id_;
    }
    if (!ch) {
        return alert(alert_illegal_parameter, "malformed_client_hello");
    }
    if (!hrr_sent_) {
        record_->offered_groups = ch->offered_groups;
    }
    if (cfg_.failure == FailureMode::alert) {
        return alert(alert_handshake_failure, "injected");
    }
    bool offers13 = contains(ch->offered_versions, wire::version::tls13);
    bool offers12 = contains(ch->offered_versions, wire::version::tls12) || ch->legacy_version == wire::version::tls12;
    if (offers13 && contains(cfg_.tls_versions, wire::version::tls13)) {
        for (auto g : ch->offered_groups) {
            if (contains(cfg_.supported_groups, g)) {
                return serve_tls13(*ch, g);
            }
        }
        return alert(alert_handshake_failure, "no_shared_group");
    }
    if (offers12 && contains(cfg_.tls_versions, wire::version::tls12) && !hrr_sent_) {
        return serve_tls12(*ch);
    }
    return alert(alert_protocol_version, "no_shared_version");
}

Bytes ServerSession::serve_tls13(const wire::ClientHelloInfo& ch, std::uint16_t group)
{
    std::uint16_t suite = 0;
    for (auto s : ch.offered_cipher_suites) {
        const auto* info = wire::cipher_suite_info(s);
        if (info && info->kx == wire::KeyExchange::tls13) {
            suite = s;
            break;
        }
    }
    if (suite == 0) {
        return alert(alert_handshake_failure, "no_tls13_suite");
    }
    wire::ServerHelloParams p;
    p.session_id = ch.session_id;
    p.cipher_suite = suite;
    p.supported_version = wire::version::tls13;
    if (!contains(ch.key_share_groups, group)) {
        if (hrr_sent_) {
            return alert(alert_illegal_parameter, "retry_without_requested_share");
        }
        hrr_sent_ = true;
        record_->hrr_sent = true;
        p.random.assign(wire::hello_retry_request_random.begin(), wire::hello_retry_request_random.end());
        p.hrr_selected_group = group;
        auto out = wire::frame_records(wire::content_type::handshake, wire::version::tls12,
                                       wire::handshake_message(wire::hs::server_hello, wire::build_server_hello_body(p)));
        auto ccs = wire::frame_records(wire::content_type::change_cipher_spec, wire::version::tls12, Bytes{1});
        out.insert(out.end(), ccs.begin(), ccs.end());
        return out;
    }
    p.random = wire::random_bytes(rng_, 32);
    p.key_share = wire::KeyShareEntry{group, wire::random_key_share(rng_, group, true)};
    Bytes out = wire::frame_records(wire::content_type::handshake, wire::version::tls12,
                                    wire::handshake_message(wire::hs::server_hello, wire::build_server_hello_body(p)));
    if (!hrr_sent_) {
        auto ccs = wire::frame_records(wire::content_type::change_cipher_spec, wire::version::tls12, Bytes{1});
        out.insert(out.end(), ccs.begin(), ccs.end());
    }
    // Stand-in for the encrypted flight; the probe stops reading at ServerHello.
    auto sealed = wire::frame_records(wire::content_type::application_data, wire::version::tls12,
                                      wire::random_bytes(rng_, 96));
    out.insert(out.end(), sealed.begin(), sealed.end());
    record_->selected_group = group;
    record_->version = wire::version::tls13;
    record_->cipher_suite = suite;
    record_->client_auth_requested = cfg_.mtls;
    record_->outcome = "served";
    closed_ = true;
    return out;
}

Bytes ServerSession::serve_tls12(const wire::ClientHelloInfo& ch)
{
    std::uint16_t suite = 0;
    for (auto s : ch.offered_cipher_suites) {
        if (contains(cfg_.tls12_cipher_suites, s)) {
            suite = s;
            break;
        }
    }
    const auto* info = suite ? wire::cipher_suite_info(suite) : nullptr;
    if (info == nullptr || info->kx == wire::KeyExchange::tls13) {
        return alert(alert_handshake_failure, "no_shared_tls12_suite");
    }
    std::optional<std::uint16_t> curve;
    if (info->kx != wire::KeyExchange::static_rsa) {
        for (auto g : ch.offered_groups) {
            if (ecdhe_curve(g) && contains(cfg_.supported_groups, g)) {
                curve = g;
                break;
            }
        }
        if (!curve) {
            return alert(alert_handshake_failure, "no_shared_curve");
        }
    }
    if (cfg_.chain.empty()) {
        return alert(alert_handshake_failure, "no_certificate");
    }
    wire::ServerHelloParams p;
    p.random = wire::random_bytes(rng_, 32);
    p.session_id = wire::random_bytes(rng_, 32);
    p.cipher_suite = suite;
    p.tls12_extensions = true;
    Bytes flight = wire::handshake_message(wire::hs::server_hello, wire::build_server_hello_body(p));
    auto append = [&flight](std::uint8_t type, const Bytes& body) {
        auto m = wire::handshake_message(type, body);
        flight.insert(flight.end(), m.begin(), m.end());
    };
    append(wire::hs::certificate, wire::build_tls12_certificate_body(cfg_.chain));
    if (curve) {
        bool ecdsa = info->kx == wire::KeyExchange::ecdhe_ecdsa;
        auto point = wire::random_key_share(rng_, *curve, true);
        auto sig = wire::random_bytes(rng_, ecdsa ? 72 : 256);
        append(wire::hs::server_key_exchange,
               wire::build_tls12_server_key_exchange_body(
                   *curve, point, ecdsa ? wire::sig::ecdsa_secp256r1_sha256 : wire::sig::rsa_pkcs1_sha256, sig));
    }
    if (cfg_.mtls) {
        append(wire::hs::certificate_request,
               wire::build_tls12_certificate_request_body({wire::sig::ecdsa_secp256r1_sha256, wire::sig::rsa_pss_rsae_sha256}));
    }
    append(wire::hs::server_hello_done, {});
    record_->selected_group = curve;
    record_->version = wire::version::tls12;
    record_->cipher_suite = suite;
    record_->client_auth_requested = cfg_.mtls;
    record_->outcome = "served";
    closed_ = true;
    return wire::frame_records(wire::content_type::handshake, wire::version::tls12, flight);
}

Emulator::Emulator(EmulatorConfig cfg) : cfg_(std::move(cfg)) {}

std::unique_ptr<ServerSession> Emulator::open_session()
{
    std::lock_guard<std::mutex> lock(mu_);
    return std::make_unique<ServerSession>(cfg_, next_id_++);
}

void Emulator::log(const HandshakeRecord& r)
{
    std::lock_guard<std::mutex> lock(mu_);
    log_.push_back(r);
}

std::vector<HandshakeRecord> Emulator::handshake_log() const
{
    std::lock_guard<std::mutex> lock(mu_);
    return log_;
}

namespace {

class InProcessConnection : public surfaces::Connection {
public:
    InProcessConnection(Emulator& emu, std::unique_ptr<ServerSession> session)
        : emu_(emu), session_(std::move(session))
    {
    }

    ~InProcessConnection() override
    {
        if (session_->record()) {
            emu_.log(*session_->record());
        }
    }

    bool send(ByteView data, std::string&) override
    {
        if (emu_.config().failure == FailureMode::timeout) {
            return true;  // swallowed
        }
        auto reply = session_->on_client_bytes(data);
        if (!reply.empty()) {
            pending_.push_back(std::move(reply));
        }
        return true;
    }

    ReadStatus read(Bytes& out, double timeout_s, std::string&) override
    {
        if (pending_.empty()) {
            return session_->closed() ? ReadStatus::closed : ReadStatus::timeout;
        }
        if (emu_.config().latency_s > timeout_s) {
            return ReadStatus::timeout;
        }
        out = std::move(pending_.front());
        pending_.pop_front();
        return ReadStatus::data;
    }

    std::optional<bool> endpoint_reported_client_auth() const override
    {
        const auto& r = session_->record();
        if (r && r->outcome == "served") {
            return r->client_auth_requested;
        }
        return std::nullopt;
    }

private:
    Emulator& emu_;
    std::unique_ptr<ServerSession> session_;
    std::deque<Bytes> pending_;
};

class InProcessConnector : public surfaces::Connector {
public:
    explicit InProcessConnector(Emulator& emu) : emu_(emu) {}

    Result connect(const surfaces::Target&, double) override
    {
        Result r;
        if (emu_.config().failure == FailureMode::refuse) {
            r.status = Status::refused;
            r.message = "connection refused";
            return r;
        }
        r.status = Status::ok;
        r.connection = std::make_unique<InProcessConnection>(emu_, emu_.open_session());
        return r;
    }

private:
    Emulator& emu_;
};

}  // namespace

std::unique_ptr<surfaces::Connector> Emulator::connector()
{
    return std::make_unique<InProcessConnector>(*this);
}

}  // namespace pqobs::bench
