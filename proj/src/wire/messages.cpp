// SPDX-License-Identifier: Apache-2.0
#include "pqobs/wire/messages.hpp"

#include <algorithm>

#include "pqobs/common/error.hpp"
#include "pqobs/wire/constants.hpp"

namespace pqobs::wire {

namespace {

void put_u16_list(ByteWriter& w, const std::vector<std::uint16_t>& values, int len_width)
{
    auto mark = w.open_len(len_width);
    for (auto v : values) {
        w.u16(v);
    }
    w.close_len(mark);
}

void put_extension(ByteWriter& w, std::uint16_t type, const Bytes& data)
{
    w.u16(type);
    auto mark = w.open_len(2);
    w.bytes(data);
    w.close_len(mark);
}

bool read_u16_list(ByteView data, std::vector<std::uint16_t>& out)
{
    if (data.size() % 2 != 0) {
        return false;
    }
    ByteReader r(data);
    while (!r.empty()) {
        std::uint16_t v = 0;
        r.read_u16(v);
        out.push_back(v);
    }
    return true;
}

// Reads a vector-of-u16 wrapped in a length prefix of the given width; the
// prefix must cover the whole extension body.
bool read_prefixed_u16_list(ByteView ext, int width, std::vector<std::uint16_t>& out)
{
    ByteReader r(ext);
    ByteView inner;
    bool ok = width == 1 ? r.read_vec8(inner) : r.read_vec16(inner);
    return ok && r.empty() && read_u16_list(inner, out);
}

struct RawExtension {
    std::uint16_t type;
    ByteView data;
};

bool read_extensions(ByteReader& r, std::vector<RawExtension>& out, std::string& err)
{
    if (r.empty()) {
        return true;
    }
    ByteView block;
    if (!r.read_vec16(block)) {
        err = "extensions block overruns message";
        return false;
    }
    ByteReader er(block);
    std::set<std::uint16_t> seen;
    while (!er.empty()) {
        RawExtension e{};
        if (!er.read_u16(e.type) || !er.read_vec16(e.data)) {
            err = "truncated extension entry";
            return false;
        }
        if (!seen.insert(e.type).second) {
            err = "duplicate extension " + std::to_string(e.type);
            return false;
        }
        out.push_back(e);
    }
    return true;
}

}  // namespace

Bytes build_client_hello_body(const ClientHelloParams& p)
{
    if (p.random.size() != 32 || p.session_id.size() > 32) {
        throw Error("encode_error", "ClientHello random must be 32 bytes and session_id at most 32");
    }
    ByteWriter w;
    w.u16(p.legacy_version);
    w.bytes(p.random);
    auto sid = w.open_len(1);
    w.bytes(p.session_id);
    w.close_len(sid);
    put_u16_list(w, p.cipher_suites, 2);
    w.u8(1);  // compression_methods: null only
    w.u8(0);

    auto exts = w.open_len(2);
    if (p.sni) {
        ByteWriter e;
        auto list = e.open_len(2);
        e.u8(0);  // host_name
        auto name = e.open_len(2);
        e.bytes(ByteView(reinterpret_cast<const std::uint8_t*>(p.sni->data()), p.sni->size()));
        e.close_len(name);
        e.close_len(list);
        put_extension(w, ext::server_name, e.data());
    }
    if (!p.supported_groups.empty()) {
        put_extension(w, ext::ec_point_formats, Bytes{1, 0});
        ByteWriter e;
        put_u16_list(e, p.supported_groups, 2);
        put_extension(w, ext::supported_groups, e.data());
    }
    if (!p.signature_schemes.empty()) {
        ByteWriter e;
        put_u16_list(e, p.signature_schemes, 2);
        put_extension(w, ext::signature_algorithms, e.data());
    }
    if (!p.supported_versions.empty()) {
        ByteWriter e;
        put_u16_list(e, p.supported_versions, 1);
        put_extension(w, ext::supported_versions, e.data());
    }
    if (p.cookie) {
        ByteWriter e;
        auto c = e.open_len(2);
        e.bytes(*p.cookie);
        e.close_len(c);
        put_extension(w, ext::cookie, e.data());
    }
    if (!p.psk_modes.empty()) {
        ByteWriter e;
        auto m = e.open_len(1);
        for (auto mode : p.psk_modes) {
            e.u8(mode);
        }
        e.close_len(m);
        put_extension(w, ext::psk_key_exchange_modes, e.data());
    }
    if (p.key_shares) {
        ByteWriter e;
        auto list = e.open_len(2);
        for (const auto& ks : *p.key_shares) {
            e.u16(ks.group);
            auto k = e.open_len(2);
            e.bytes(ks.key_exchange);
            e.close_len(k);
        }
        e.close_len(list);
        put_extension(w, ext::key_share, e.data());
    }
    if (p.psk) {
        ByteWriter e;
        auto ids = e.open_len(2);
        auto id = e.open_len(2);
        e.bytes(p.psk->identity);
        e.close_len(id);
        e.u16(static_cast<std::uint16_t>(p.psk->obfuscated_ticket_age >> 16));
        e.u16(static_cast<std::uint16_t>(p.psk->obfuscated_ticket_age));
        e.close_len(ids);
        auto binders = e.open_len(2);
        auto b = e.open_len(1);
        e.bytes(p.psk->binder);
        e.close_len(b);
        e.close_len(binders);
        put_extension(w, ext::pre_shared_key, e.data());
    }
    w.close_len(exts);
    return w.take();
}

Bytes build_server_hello_body(const ServerHelloParams& p)
{
    if (p.random.size() != 32 || p.session_id.size() > 32) {
        throw Error("encode_error", "ServerHello random must be 32 bytes and session_id at most 32");
    }
    ByteWriter w;
    w.u16(p.legacy_version);
    w.bytes(p.random);
    auto sid = w.open_len(1);
    w.bytes(p.session_id);
    w.close_len(sid);
    w.u16(p.cipher_suite);
    w.u8(0);

    auto exts = w.open_len(2);
    if (p.tls12_extensions) {
        put_extension(w, ext::renegotiation_info, Bytes{0});
        put_extension(w, ext::ec_point_formats, Bytes{1, 0});
    }
    if (p.supported_version) {
        ByteWriter e;
        e.u16(*p.supported_version);
        put_extension(w, ext::supported_versions, e.data());
    }
    if (p.hrr_selected_group) {
        ByteWriter e;
        e.u16(*p.hrr_selected_group);
        put_extension(w, ext::key_share, e.data());
    } else if (p.key_share) {
        ByteWriter e;
        e.u16(p.key_share->group);
        auto k = e.open_len(2);
        e.bytes(p.key_share->key_exchange);
        e.close_len(k);
        put_extension(w, ext::key_share, e.data());
    }
    if (p.cookie) {
        ByteWriter e;
        auto c = e.open_len(2);
        e.bytes(*p.cookie);
        e.close_len(c);
        put_extension(w, ext::cookie, e.data());
    }
    if (p.selected_psk_identity) {
        ByteWriter e;
        e.u16(*p.selected_psk_identity);
        put_extension(w, ext::pre_shared_key, e.data());
    }
    w.close_len(exts);
    return w.take();
}

Bytes build_tls12_certificate_body(const std::vector<Bytes>& chain)
{
    ByteWriter w;
    auto list = w.open_len(3);
    for (const auto& cert : chain) {
        auto c = w.open_len(3);
        w.bytes(cert);
        w.close_len(c);
    }
    w.close_len(list);
    return w.take();
}

Bytes build_tls12_server_key_exchange_body(std::uint16_t group, ByteView point, std::uint16_t sig_scheme,
                                           ByteView signature)
{
    ByteWriter w;
    w.u8(3);  // named_curve
    w.u16(group);
    auto pt = w.open_len(1);
    w.bytes(point);
    w.close_len(pt);
    w.u16(sig_scheme);
    auto s = w.open_len(2);
    w.bytes(signature);
    w.close_len(s);
    return w.take();
}

Bytes build_tls12_certificate_request_body(const std::vector<std::uint16_t>& sig_schemes)
{
    ByteWriter w;
    auto types = w.open_len(1);
    w.u8(1);   // rsa_sign
    w.u8(64);  // ecdsa_sign
    w.close_len(types);
    put_u16_list(w, sig_schemes, 2);
    auto cas = w.open_len(2);
    w.close_len(cas);
    return w.take();
}

Bytes handshake_message(std::uint8_t type, ByteView body)
{
    ByteWriter w;
    w.u8(type);
    w.u24(static_cast<std::uint32_t>(body.size()));
    w.bytes(body);
    return w.take();
}

Bytes frame_records(std::uint8_t content_type, std::uint16_t record_version, ByteView payload,
                    std::size_t max_fragment)
{
    if (max_fragment == 0) {
        throw Error("encode_error", "record fragment limit must be positive");
    }
    ByteWriter w;
    std::size_t pos = 0;
    do {
        auto n = std::min(max_fragment, payload.size() - pos);
        w.u8(content_type);
        w.u16(record_version);
        w.u16(static_cast<std::uint16_t>(n));
        w.bytes(payload.subspan(pos, n));
        pos += n;
    } while (pos < payload.size());
    return w.take();
}

std::optional<ClientHelloInfo> parse_client_hello(ByteView body, std::string& err)
{
    ClientHelloInfo ch;
    ByteReader r(body);
    ByteView sid;
    ByteView suites;
    ByteView compression;
    if (!r.read_u16(ch.legacy_version) || !r.read_bytes(32, ch.random) || !r.read_vec8(sid) ||
        !r.read_vec16(suites) || !r.read_vec8(compression)) {
        err = "ClientHello fixed fields truncated";
        return std::nullopt;
    }
    if (sid.size() > 32 || suites.empty() || compression.empty() ||
        !read_u16_list(suites, ch.offered_cipher_suites)) {
        err = "ClientHello fixed fields invalid";
        return std::nullopt;
    }
    ch.session_id.assign(sid.begin(), sid.end());
    std::vector<RawExtension> exts;
    if (!read_extensions(r, exts, err)) {
        return std::nullopt;
    }
    if (!r.empty()) {
        err = "trailing bytes after ClientHello extensions";
        return std::nullopt;
    }
    for (const auto& e : exts) {
        ch.extensions_present.insert(e.type);
        bool ok = true;
        switch (e.type) {
        case ext::server_name: {
            ByteReader er(e.data);
            ByteView list;
            ok = er.read_vec16(list) && er.empty();
            ByteReader lr(list);
            while (ok && !lr.empty()) {
                std::uint8_t name_type = 0;
                ByteView name;
                ok = lr.read_u8(name_type) && lr.read_vec16(name);
                if (ok && name_type == 0 && !ch.sni) {
                    ch.sni = std::string(name.begin(), name.end());
                }
            }
            break;
        }
        case ext::supported_groups:
            ok = read_prefixed_u16_list(e.data, 2, ch.offered_groups);
            break;
        case ext::signature_algorithms:
            ok = read_prefixed_u16_list(e.data, 2, ch.signature_schemes);
            break;
        case ext::supported_versions:
            ok = read_prefixed_u16_list(e.data, 1, ch.offered_versions);
            break;
        case ext::key_share: {
            ByteReader er(e.data);
            ByteView list;
            ok = er.read_vec16(list) && er.empty();
            ByteReader lr(list);
            while (ok && !lr.empty()) {
                std::uint16_t g = 0;
                ByteView key;
                ok = lr.read_u16(g) && lr.read_vec16(key);
                if (ok) {
                    ch.key_share_groups.push_back(g);
                }
            }
            break;
        }
        case ext::psk_key_exchange_modes: {
            ByteReader er(e.data);
            ByteView modes;
            ok = er.read_vec8(modes) && er.empty();
            ch.psk_modes.assign(modes.begin(), modes.end());
            break;
        }
        case ext::pre_shared_key: {
            ByteReader er(e.data);
            ByteView ids;
            ByteView binders;
            ok = er.read_vec16(ids) && er.read_vec16(binders) && er.empty() && !ids.empty();
            ch.psk_offered = ok;
            break;
        }
        case ext::cookie:
            ch.cookie_present = true;
            break;
        default:
            break;
        }
        if (!ok) {
            err = "malformed ClientHello extension " + std::to_string(e.type);
            return std::nullopt;
        }
    }
    if (ch.offered_versions.empty()) {
        ch.offered_versions.push_back(ch.legacy_version);
    }
    return ch;
}

std::optional<ServerHelloInfo> parse_server_hello(ByteView body, std::string& err)
{
    ServerHelloInfo sh;
    ByteReader r(body);
    ByteView sid;
    std::uint8_t compression = 0;
    if (!r.read_u16(sh.legacy_version) || !r.read_bytes(32, sh.random) || !r.read_vec8(sid) ||
        !r.read_u16(sh.selected_cipher_suite) || !r.read_u8(compression)) {
        err = "ServerHello fixed fields truncated";
        return std::nullopt;
    }
    if (sid.size() > 32) {
        err = "ServerHello session_id too long";
        return std::nullopt;
    }
    sh.session_id.assign(sid.begin(), sid.end());
    sh.is_hrr = std::equal(sh.random.begin(), sh.random.end(), hello_retry_request_random.begin());
    std::vector<RawExtension> exts;
    if (!read_extensions(r, exts, err)) {
        return std::nullopt;
    }
    if (!r.empty()) {
        err = "trailing bytes after ServerHello extensions";
        return std::nullopt;
    }
    sh.selected_version = sh.legacy_version;
    for (const auto& e : exts) {
        sh.extensions_present.insert(e.type);
        ByteReader er(e.data);
        bool ok = true;
        switch (e.type) {
        case ext::supported_versions: {
            std::uint16_t v = 0;
            ok = er.read_u16(v) && er.empty();
            sh.selected_version = v;
            sh.supported_versions_present = ok;
            break;
        }
        case ext::key_share: {
            std::uint16_t g = 0;
            if (sh.is_hrr) {
                ok = er.read_u16(g) && er.empty();
            } else {
                ByteView key;
                ok = er.read_u16(g) && er.read_vec16(key) && er.empty() && !key.empty();
            }
            if (ok) {
                sh.key_share_group = g;
            }
            break;
        }
        case ext::pre_shared_key: {
            std::uint16_t idx = 0;
            ok = er.read_u16(idx) && er.empty();
            sh.psk_selected = ok;
            break;
        }
        default:
            break;
        }
        if (!ok) {
            err = "malformed ServerHello extension " + std::to_string(e.type);
            return std::nullopt;
        }
    }
    return sh;
}

std::optional<std::vector<Bytes>> parse_tls12_certificate(ByteView body, std::string& err)
{
    ByteReader r(body);
    ByteView list;
    if (!r.read_vec24(list) || !r.empty()) {
        err = "Certificate list length mismatch";
        return std::nullopt;
    }
    std::vector<Bytes> chain;
    ByteReader lr(list);
    while (!lr.empty()) {
        ByteView cert;
        if (!lr.read_vec24(cert) || cert.empty()) {
            err = "Certificate entry truncated";
            return std::nullopt;
        }
        chain.emplace_back(cert.begin(), cert.end());
    }
    return chain;
}

std::optional<std::uint16_t> parse_tls12_server_key_exchange_group(ByteView body, std::string& err)
{
    ByteReader r(body);
    std::uint8_t curve_type = 0;
    std::uint16_t g = 0;
    ByteView point;
    if (!r.read_u8(curve_type) || curve_type != 3 || !r.read_u16(g) || !r.read_vec8(point) || point.empty()) {
        err = "ServerKeyExchange is not named-curve ECDHE";
        return std::nullopt;
    }
    return g;
}

}  // namespace pqobs::wire
