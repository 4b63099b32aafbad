// SPDX-License-Identifier: Apache-2.0
#include "pqobs/common/sha256.hpp"

#include <openssl/evp.h>

#include "pqobs/common/error.hpp"

namespace pqobs {

std::string sha256_hex(ByteView data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("crypto_error", "SHA-256 digest failed");
    }
    return to_hex(ByteView(md, len));
}

std::string sha256_hex(std::string_view text)
{
    return sha256_hex(ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace pqobs
