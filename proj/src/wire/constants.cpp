// SPDX-License-Identifier: Apache-2.0
#include "pqobs/wire/constants.hpp"

#include <cstdio>

namespace pqobs::wire {

const std::array<std::uint8_t, 32> hello_retry_request_random = {
    0xcf, 0x21, 0xad, 0x74, 0xe5, 0x9a, 0x61, 0x11, 0xbe, 0x1d, 0x8c, 0x02, 0x1e, 0x65, 0xb8, 0x91,
    0xc2, 0xa2, 0x11, 0x16, 0x7a, 0xbb, 0x8c, 0x5e, 0x07, 0x9e, 0x09, 0xe2, 0xc8, 0xa8, 0x33, 0x9c,
};

namespace {

constexpr CipherSuiteInfo suites[] = {
    {0x009c, "TLS_RSA_WITH_AES_128_GCM_SHA256", KeyExchange::static_rsa},
    {0x009d, "TLS_RSA_WITH_AES_256_GCM_SHA384", KeyExchange::static_rsa},
    {0xc02b, "TLS_ECDHE_ECDSA_WITH_AES_128_GCM_SHA256", KeyExchange::ecdhe_ecdsa},
    {0xc02c, "TLS_ECDHE_ECDSA_WITH_AES_256_GCM_SHA384", KeyExchange::ecdhe_ecdsa},
    {0xc02f, "TLS_ECDHE_RSA_WITH_AES_128_GCM_SHA256", KeyExchange::ecdhe_rsa},
    {0xc030, "TLS_ECDHE_RSA_WITH_AES_256_GCM_SHA384", KeyExchange::ecdhe_rsa},
    {0x1301, "TLS_AES_128_GCM_SHA256", KeyExchange::tls13},
    {0x1302, "TLS_AES_256_GCM_SHA384", KeyExchange::tls13},
    {0x1303, "TLS_CHACHA20_POLY1305_SHA256", KeyExchange::tls13},
};

}  // namespace

const CipherSuiteInfo* cipher_suite_info(std::uint16_t id)
{
    for (const auto& s : suites) {
        if (s.id == id) {
            return &s;
        }
    }
    return nullptr;
}

std::optional<std::uint16_t> cipher_suite_by_name(std::string_view name)
{
    for (const auto& s : suites) {
        if (s.name == name) {
            return s.id;
        }
    }
    return std::nullopt;
}

std::size_t key_share_length(std::uint16_t g, bool from_server)
{
    switch (g) {
    case group::x25519:
        return 32;
    case group::x448:
        return 56;
    case group::secp256r1:
        return 65;
    case group::secp384r1:
        return 97;
    case group::secp521r1:
        return 133;
    case group::mlkem512:
        return from_server ? 768 : 800;
    case group::mlkem768:
        return from_server ? 1088 : 1184;
    case group::mlkem1024:
        return from_server ? 1568 : 1568;
    case group::x25519_mlkem768:
    case group::x25519_kyber768_draft00:
        return from_server ? 1088 + 32 : 1184 + 32;
    case group::secp256r1_mlkem768:
    case group::secp256r1_kyber768_draft00:
        return from_server ? 65 + 1088 : 65 + 1184;
    case group::secp384r1_mlkem1024:
        return from_server ? 97 + 1568 : 97 + 1568;
    default:
        return 0;
    }
}

std::string version_name(std::uint16_t v)
{
    switch (v) {
    case version::tls10:
        return "TLS1.0";
    case version::tls11:
        return "TLS1.1";
    case version::tls12:
        return "TLS1.2";
    case version::tls13:
        return "TLS1.3";
    default: {
        char buf[8];
        std::snprintf(buf, sizeof buf, "0x%04x", v);
        return buf;
    }
    }
}

std::optional<std::uint16_t> version_from_name(std::string_view name)
{
    for (std::uint16_t v : {version::tls10, version::tls11, version::tls12, version::tls13}) {
        if (version_name(v) == name) {
            return v;
        }
    }
    return std::nullopt;
}

}  // namespace pqobs::wire
