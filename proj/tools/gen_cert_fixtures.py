#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Generate the deterministic X.509 fixtures used by the benchmark suite.

Keys are derived from fixed seeds (RSA primes from a seeded PRNG, EC scalars
from SHA-256), validity windows are fixed, and ECDSA signatures use RFC 6979
deterministic nonces, so re-running the script reproduces byte-identical DER.

Usage: gen_cert_fixtures.py [output_dir]   (default: data/fixtures/certs)
"""

import datetime
import hashlib
import json
import os
import random
import sys

import sympy
from cryptography import x509
from cryptography.hazmat.primitives import hashes, serialization
from cryptography.hazmat.primitives.asymmetric import ec, padding, rsa
from cryptography.x509.oid import NameOID, ExtendedKeyUsageOID

NOT_BEFORE = datetime.datetime(2025, 1, 1, 0, 0, 0, tzinfo=datetime.timezone.utc)

SPKI_OIDS = {"RSA": "1.2.840.113549.1.1.1", "ECDSA": "1.2.840.10045.2.1"}
SIG_OIDS = {
    "sha256WithRSAEncryption": "1.2.840.113549.1.1.11",
    "ecdsa-with-SHA256": "1.2.840.10045.4.3.2",
}


def rsa_key(seed: str, bits: int = 2048) -> rsa.RSAPrivateKey:
    rng = random.Random(hashlib.sha256(seed.encode()).digest())
    e = 65537
    while True:
        primes = []
        for _ in range(2):
            cand = rng.getrandbits(bits // 2) | (3 << (bits // 2 - 2)) | 1
            primes.append(sympy.nextprime(cand))
        p, q = max(primes), min(primes)
        phi = (p - 1) * (q - 1)
        if p != q and sympy.gcd(e, phi) == 1 and (p * q).bit_length() == bits:
            break
    d = pow(e, -1, phi)
    pub = rsa.RSAPublicNumbers(e, p * q)
    priv = rsa.RSAPrivateNumbers(
        p, q, d, d % (p - 1), d % (q - 1), pow(q, -1, p), pub)
    return priv.private_key()


def ec_key(seed: str) -> ec.EllipticCurvePrivateKey:
    order = 0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551
    scalar = int.from_bytes(hashlib.sha256(seed.encode()).digest(), "big") % (order - 1) + 1
    return ec.derive_private_key(scalar, ec.SECP256R1())


def name(cn: str) -> x509.Name:
    return x509.Name([
        x509.NameAttribute(NameOID.ORGANIZATION_NAME, "pqobs bench"),
        x509.NameAttribute(NameOID.COMMON_NAME, cn),
    ])


def sign_args(issuer_key):
    if isinstance(issuer_key, ec.EllipticCurvePrivateKey):
        return {"algorithm": hashes.SHA256(), "ecdsa_deterministic": True}, "ecdsa-with-SHA256"
    return {"algorithm": hashes.SHA256(), "rsa_padding": padding.PKCS1v15()}, "sha256WithRSAEncryption"


def build(subject, key, issuer_name, issuer_key, serial, days, ca=False, client=False, san=None):
    builder = (x509.CertificateBuilder()
               .subject_name(name(subject))
               .issuer_name(issuer_name)
               .public_key(key.public_key())
               .serial_number(serial)
               .not_valid_before(NOT_BEFORE)
               .not_valid_after(NOT_BEFORE + datetime.timedelta(days=days))
               .add_extension(x509.BasicConstraints(ca=ca, path_length=None), critical=True))
    if san:
        builder = builder.add_extension(
            x509.SubjectAlternativeName([x509.DNSName(san)]), critical=False)
    if client:
        builder = builder.add_extension(
            x509.ExtendedKeyUsage([ExtendedKeyUsageOID.CLIENT_AUTH]), critical=False)
    args, sig_name = sign_args(issuer_key)
    cert = builder.sign(private_key=issuer_key, **args)
    return cert, sig_name


def main() -> int:
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(os.path.abspath(__file__)), "..", "data", "fixtures", "certs")
    os.makedirs(out, exist_ok=True)

    root_key = ec_key("pqobs-root-v1")
    root_name = name("pqobs bench root")
    inter_key = ec_key("pqobs-intermediate-v1")
    inter_name = name("pqobs bench intermediate")

    specs = [
        # (fixture, subject, key type, key seed, issuer, serial, days, ca, client, san)
        ("root_ecdsa", "pqobs bench root", "ECDSA", "pqobs-root-v1", "self", 1, 3650, True, False, None),
        ("intermediate_ecdsa", "pqobs bench intermediate", "ECDSA", "pqobs-intermediate-v1", "root", 2, 1825, True, False, None),
        ("leaf_rsa_90", "rsa90.bench.pqobs.test", "RSA", "pqobs-leaf-rsa-v1", "intermediate", 10, 90, False, False, "rsa90.bench.pqobs.test"),
        ("leaf_rsa_398", "rsa398.bench.pqobs.test", "RSA", "pqobs-leaf-rsa-v1", "intermediate", 11, 398, False, False, "rsa398.bench.pqobs.test"),
        ("leaf_ecdsa_90", "ecdsa90.bench.pqobs.test", "ECDSA", "pqobs-leaf-ecdsa-v1", "intermediate", 12, 90, False, False, "ecdsa90.bench.pqobs.test"),
        ("leaf_ecdsa_398", "ecdsa398.bench.pqobs.test", "ECDSA", "pqobs-leaf-ecdsa-v1", "intermediate", 13, 398, False, False, "ecdsa398.bench.pqobs.test"),
        ("client_ecdsa", "client.bench.pqobs.test", "ECDSA", "pqobs-client-v1", "intermediate", 20, 398, False, True, None),
        ("selfsigned_ecdsa", "selfsigned.bench.pqobs.test", "ECDSA", "pqobs-selfsigned-v1", "self", 30, 90, False, False, "selfsigned.bench.pqobs.test"),
    ]

    manifest = {"version": "1.0.0", "generator": "tools/gen_cert_fixtures.py", "fixtures": {}}
    keys = {}
    for fixture, subject, key_type, seed, issuer, serial, days, ca, client, san in specs:
        if seed not in keys:
            keys[seed] = rsa_key(seed) if key_type == "RSA" else ec_key(seed)
        key = keys[seed]
        if issuer == "self":
            issuer_name, issuer_key = name(subject), key
        elif issuer == "root":
            issuer_name, issuer_key = root_name, root_key
        else:
            issuer_name, issuer_key = inter_name, inter_key
        cert, sig_name = build(subject, key, issuer_name, issuer_key, serial, days, ca, client, san)
        der = cert.public_bytes(serialization.Encoding.DER)
        with open(os.path.join(out, fixture + ".der"), "wb") as fh:
            fh.write(der)
        manifest["fixtures"][fixture] = {
            "file": fixture + ".der",
            "subject_cn": subject,
            "key_type": key_type,
            "spki_oid": SPKI_OIDS[key_type],
            "signature_algorithm": sig_name,
            "signature_oid": SIG_OIDS[sig_name],
            "not_before": NOT_BEFORE.strftime("%Y-%m-%dT%H:%M:%SZ"),
            "not_after": (NOT_BEFORE + datetime.timedelta(days=days)).strftime("%Y-%m-%dT%H:%M:%SZ"),
            "validity_days": days,
            "self_signed": issuer == "self",
            "sha256": hashlib.sha256(der).hexdigest(),
        }

    with open(os.path.join(out, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
