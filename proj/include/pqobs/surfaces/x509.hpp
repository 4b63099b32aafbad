// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "pqobs/common/bytes.hpp"
#include "pqobs/common/timefmt.hpp"

namespace pqobs::surfaces {

// The handful of leaf fields the chain surface needs. No path validation,
// no extension processing.
struct CertificateInfo {
    std::string signature_oid;  // outer signatureAlgorithm
    std::string spki_oid;       // subjectPublicKeyInfo algorithm
    EpochSeconds not_before = 0;
    EpochSeconds not_after = 0;
    Bytes issuer;   // raw DER of the issuer Name
    Bytes subject;  // raw DER of the subject Name
    std::string fingerprint;  // SHA-256 hex of the whole certificate

    bool self_issued() const { return issuer == subject; }
};

// Returns std::nullopt and sets err for anything that is not a well-formed
// X.509 v1/v3 certificate at the level walked here.
std::optional<CertificateInfo> parse_certificate(ByteView der, std::string& err);

// Dotted-decimal rendering of DER OID content bytes.
std::optional<std::string> decode_oid(ByteView content);

}  // namespace pqobs::surfaces
