// SPDX-License-Identifier: Apache-2.0
#include "pqobs/surfaces/x509.hpp"

#include "pqobs/common/sha256.hpp"

namespace pqobs::surfaces {

namespace {

namespace tag {
constexpr std::uint8_t integer = 0x02;
constexpr std::uint8_t bit_string = 0x03;
constexpr std::uint8_t oid = 0x06;
constexpr std::uint8_t utc_time = 0x17;
constexpr std::uint8_t generalized_time = 0x18;
constexpr std::uint8_t sequence = 0x30;
constexpr std::uint8_t explicit0 = 0xa0;
}  // namespace tag

struct Tlv {
    std::uint8_t tag = 0;
    ByteView content;
    ByteView whole;
};

// Reads one DER element. Only low tag numbers and definite lengths of up to
// four bytes occur in certificates.
bool read_tlv(ByteReader& r, Tlv& out)
{
    auto start = r.offset();
    ByteReader probe = r;
    std::uint8_t t = 0, l0 = 0;
    if (!probe.read_u8(t) || (t & 0x1f) == 0x1f || !probe.read_u8(l0)) {
        return false;
    }
    std::size_t len = l0;
    if (l0 & 0x80) {
        std::size_t n = l0 & 0x7f;
        if (n == 0 || n > 4) {
            return false;
        }
        len = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint8_t b = 0;
            if (!probe.read_u8(b)) {
                return false;
            }
            len = (len << 8) | b;
        }
    }
    auto header = probe.offset() - start;
    ByteView content;
    if (!probe.read_view(len, content)) {
        return false;
    }
    ByteView whole;
    r.read_view(header + len, whole);
    out = {t, content, whole};
    return true;
}

bool expect(ByteReader& r, std::uint8_t t, Tlv& out)
{
    return read_tlv(r, out) && out.tag == t;
}

int digits(ByteView s, std::size_t at, std::size_t n)
{
    int v = 0;
    for (std::size_t i = at; i < at + n; ++i) {
        if (s[i] < '0' || s[i] > '9') {
            return -1;
        }
        v = v * 10 + (s[i] - '0');
    }
    return v;
}

std::optional<EpochSeconds> decode_time(const Tlv& t)
{
    auto s = t.content;
    int year = 0;
    std::size_t at = 0;
    if (t.tag == tag::utc_time && s.size() == 13) {
        year = digits(s, 0, 2);
        if (year < 0) {
            return std::nullopt;
        }
        year += year >= 50 ? 1900 : 2000;
        at = 2;
    } else if (t.tag == tag::generalized_time && s.size() == 15) {
        year = digits(s, 0, 4);
        at = 4;
    } else {
        return std::nullopt;
    }
    if (s.back() != 'Z' || year < 0) {
        return std::nullopt;
    }
    int mo = digits(s, at, 2), d = digits(s, at + 2, 2), h = digits(s, at + 4, 2), mi = digits(s, at + 6, 2),
        se = digits(s, at + 8, 2);
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59 || se < 0 || se > 60) {
        return std::nullopt;
    }
    return epoch_from_civil(year, static_cast<unsigned>(mo), static_cast<unsigned>(d), h, mi, se);
}

std::optional<std::string> algorithm_oid(const Tlv& alg)
{
    ByteReader r(alg.content);
    Tlv oid;
    if (!expect(r, tag::oid, oid)) {
        return std::nullopt;
    }
    return decode_oid(oid.content);
}

}  // namespace

std::optional<std::string> decode_oid(ByteView c)
{
    if (c.empty() || (c.back() & 0x80)) {
        return std::nullopt;
    }
    std::string out;
    std::uint64_t v = 0;
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (v == 0 && c[i] == 0x80) {
            return std::nullopt;  // non-minimal encoding
        }
        if (v > (UINT64_MAX >> 7)) {
            return std::nullopt;
        }
        v = (v << 7) | (c[i] & 0x7f);
        if (c[i] & 0x80) {
            continue;
        }
        if (first) {
            auto a = v < 80 ? v / 40 : 2;
            out = std::to_string(a) + "." + std::to_string(v - 40 * a);
            first = false;
        } else {
            out += "." + std::to_string(v);
        }
        v = 0;
    }
    return out;
}

std::optional<CertificateInfo> parse_certificate(ByteView der, std::string& err)
{
    ByteReader top(der);
    Tlv cert, tbs, sig_alg, sig;
    if (!expect(top, tag::sequence, cert) || !top.empty()) {
        err = "certificate is not a single DER SEQUENCE";
        return std::nullopt;
    }
    ByteReader cr(cert.content);
    if (!expect(cr, tag::sequence, tbs) || !expect(cr, tag::sequence, sig_alg) || !expect(cr, tag::bit_string, sig)) {
        err = "certificate outer structure malformed";
        return std::nullopt;
    }
    CertificateInfo info;
    auto so = algorithm_oid(sig_alg);
    if (!so) {
        err = "signatureAlgorithm malformed";
        return std::nullopt;
    }
    info.signature_oid = *so;

    ByteReader tr(tbs.content);
    Tlv el;
    if (!read_tlv(tr, el)) {
        err = "tbsCertificate empty";
        return std::nullopt;
    }
    if (el.tag == tag::explicit0 && !read_tlv(tr, el)) {
        err = "tbsCertificate truncated after version";
        return std::nullopt;
    }
    if (el.tag != tag::integer) {
        err = "serialNumber missing";
        return std::nullopt;
    }
    Tlv inner_sig, issuer, validity, subject, spki;
    if (!expect(tr, tag::sequence, inner_sig) || !expect(tr, tag::sequence, issuer) ||
        !expect(tr, tag::sequence, validity) || !expect(tr, tag::sequence, subject) ||
        !expect(tr, tag::sequence, spki)) {
        err = "tbsCertificate fields malformed";
        return std::nullopt;
    }
    ByteReader vr(validity.content);
    Tlv nb, na;
    if (!read_tlv(vr, nb) || !read_tlv(vr, na)) {
        err = "validity malformed";
        return std::nullopt;
    }
    auto t0 = decode_time(nb), t1 = decode_time(na);
    if (!t0 || !t1) {
        err = "validity time malformed";
        return std::nullopt;
    }
    info.not_before = *t0;
    info.not_after = *t1;
    ByteReader sr(spki.content);
    Tlv spki_alg;
    if (!expect(sr, tag::sequence, spki_alg)) {
        err = "subjectPublicKeyInfo malformed";
        return std::nullopt;
    }
    auto ko = algorithm_oid(spki_alg);
    if (!ko) {
        err = "subjectPublicKeyInfo algorithm malformed";
        return std::nullopt;
    }
    info.spki_oid = *ko;
    info.issuer.assign(issuer.whole.begin(), issuer.whole.end());
    info.subject.assign(subject.whole.begin(), subject.whole.end());
    info.fingerprint = sha256_hex(der);
    return info;
}

}  // namespace pqobs::surfaces
