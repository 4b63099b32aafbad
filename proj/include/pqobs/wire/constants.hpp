// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pqobs::wire {

namespace content_type {
inline constexpr std::uint8_t change_cipher_spec = 20;
inline constexpr std::uint8_t alert = 21;
inline constexpr std::uint8_t handshake = 22;
inline constexpr std::uint8_t application_data = 23;
}  // namespace content_type

namespace hs {
inline constexpr std::uint8_t client_hello = 1;
inline constexpr std::uint8_t server_hello = 2;
inline constexpr std::uint8_t new_session_ticket = 4;
inline constexpr std::uint8_t encrypted_extensions = 8;
inline constexpr std::uint8_t certificate = 11;
inline constexpr std::uint8_t server_key_exchange = 12;
inline constexpr std::uint8_t certificate_request = 13;
inline constexpr std::uint8_t server_hello_done = 14;
inline constexpr std::uint8_t certificate_verify = 15;
inline constexpr std::uint8_t client_key_exchange = 16;
inline constexpr std::uint8_t finished = 20;
}  // namespace hs

namespace ext {
inline constexpr std::uint16_t server_name = 0;
inline constexpr std::uint16_t supported_groups = 10;
inline constexpr std::uint16_t ec_point_formats = 11;
inline constexpr std::uint16_t signature_algorithms = 13;
inline constexpr std::uint16_t alpn = 16;
inline constexpr std::uint16_t extended_master_secret = 23;
inline constexpr std::uint16_t pre_shared_key = 41;
inline constexpr std::uint16_t early_data = 42;
inline constexpr std::uint16_t supported_versions = 43;
inline constexpr std::uint16_t cookie = 44;
inline constexpr std::uint16_t psk_key_exchange_modes = 45;
inline constexpr std::uint16_t key_share = 51;
inline constexpr std::uint16_t renegotiation_info = 0xff01;
}  // namespace ext

namespace group {
inline constexpr std::uint16_t secp256r1 = 0x0017;
inline constexpr std::uint16_t secp384r1 = 0x0018;
inline constexpr std::uint16_t secp521r1 = 0x0019;
inline constexpr std::uint16_t x25519 = 0x001d;
inline constexpr std::uint16_t x448 = 0x001e;
inline constexpr std::uint16_t mlkem512 = 0x0200;
inline constexpr std::uint16_t mlkem768 = 0x0201;
inline constexpr std::uint16_t mlkem1024 = 0x0202;
inline constexpr std::uint16_t secp256r1_mlkem768 = 0x11eb;
inline constexpr std::uint16_t x25519_mlkem768 = 0x11ec;
inline constexpr std::uint16_t secp384r1_mlkem1024 = 0x11ed;
inline constexpr std::uint16_t x25519_kyber768_draft00 = 0x6399;
inline constexpr std::uint16_t secp256r1_kyber768_draft00 = 0x639a;
}  // namespace group

namespace sig {
inline constexpr std::uint16_t rsa_pkcs1_sha256 = 0x0401;
inline constexpr std::uint16_t ecdsa_secp256r1_sha256 = 0x0403;
inline constexpr std::uint16_t rsa_pkcs1_sha384 = 0x0501;
inline constexpr std::uint16_t ecdsa_secp384r1_sha384 = 0x0503;
inline constexpr std::uint16_t rsa_pss_rsae_sha256 = 0x0804;
inline constexpr std::uint16_t rsa_pss_rsae_sha384 = 0x0805;
inline constexpr std::uint16_t ed25519 = 0x0807;
}  // namespace sig

namespace version {
inline constexpr std::uint16_t tls10 = 0x0301;
inline constexpr std::uint16_t tls11 = 0x0302;
inline constexpr std::uint16_t tls12 = 0x0303;
inline constexpr std::uint16_t tls13 = 0x0304;
}  // namespace version

namespace psk_mode {
inline constexpr std::uint8_t psk_ke = 0;
inline constexpr std::uint8_t psk_dhe_ke = 1;
}  // namespace psk_mode

inline constexpr std::size_t max_plaintext_fragment = 16384;
// Ciphertext records may exceed the plaintext limit by the expansion allowance.
inline constexpr std::size_t max_record_payload = 16384 + 2048;

// SHA-256("HelloRetryRequest"), carried as the ServerHello random of an HRR.
extern const std::array<std::uint8_t, 32> hello_retry_request_random;

enum class KeyExchange { static_rsa, ecdhe_rsa, ecdhe_ecdsa, tls13 };

struct CipherSuiteInfo {
    std::uint16_t id;
    std::string_view name;
    KeyExchange kx;
};

const CipherSuiteInfo* cipher_suite_info(std::uint16_t id);
std::optional<std::uint16_t> cipher_suite_by_name(std::string_view name);

// Key-share payload length for a group; client and server sizes differ for
// KEM-based groups. Returns 0 for groups without a fixed size.
std::size_t key_share_length(std::uint16_t group, bool from_server);

// "TLS1.2", "TLS1.3", or "0x0302"-style for anything else.
std::string version_name(std::uint16_t v);
std::optional<std::uint16_t> version_from_name(std::string_view name);

}  // namespace pqobs::wire
