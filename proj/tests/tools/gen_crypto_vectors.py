#!/usr/bin/env python3
"""Reference-compute the crypto known-answer values frozen in the C++ tests.

Everything here is derived from public standards (FIPS 180-4, RFC 2104/4231,
RFC 5869, NIST SP 800-90A) using Python's hashlib/hmac as the independent
reference implementation. Run it and compare against the constants embedded
in tests/test_primitives.cpp and tests/test_keystream.cpp.
"""

import hashlib
import hmac
import struct


def sha256(b: bytes) -> bytes:
    return hashlib.sha256(b).digest()


def hmac_sha256(key: bytes, msg: bytes) -> bytes:
    return hmac.new(key, msg, hashlib.sha256).digest()


def hkdf_sha256(ikm: bytes, salt: bytes, info: bytes, length: int) -> bytes:
    prk = hmac_sha256(salt if salt else b"\x00" * 32, ikm)
    okm = b""
    t = b""
    i = 1
    while len(okm) < length:
        t = hmac_sha256(prk, t + info + bytes([i]))
        okm += t
        i += 1
    return okm[:length]


class HmacDrbg:
    """SP 800-90A HMAC_DRBG(SHA-256), straight from section 10.1.2."""

    def __init__(self, entropy: bytes, nonce: bytes = b"", personalization: bytes = b""):
        self.K = b"\x00" * 32
        self.V = b"\x01" * 32
        self._update(entropy + nonce + personalization)
        self.reseed_counter = 1

    def _update(self, provided: bytes) -> None:
        self.K = hmac_sha256(self.K, self.V + b"\x00" + provided)
        self.V = hmac_sha256(self.K, self.V)
        if provided:
            self.K = hmac_sha256(self.K, self.V + b"\x01" + provided)
            self.V = hmac_sha256(self.K, self.V)

    def generate(self, n: int) -> bytes:
        temp = b""
        while len(temp) < n:
            self.V = hmac_sha256(self.K, self.V)
            temp += self.V
        self._update(b"")
        self.reseed_counter += 1
        return temp[:n]


def main() -> None:
    print("== SHA-256 (FIPS 180-4) ==")
    print("empty      :", sha256(b"").hex())
    print("abc        :", sha256(b"abc").hex())
    print("1e6 x 'a'  :", sha256(b"a" * 1_000_000).hex())
    print("448-bit msg:", sha256(b"abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq").hex())

    print("\n== HMAC-SHA-256 (RFC 4231) ==")
    print("TC1:", hmac_sha256(b"\x0b" * 20, b"Hi There").hex())
    print("TC2:", hmac_sha256(b"Jefe", b"what do ya want for nothing?").hex())
    print("TC3:", hmac_sha256(b"\xaa" * 20, b"\xdd" * 50).hex())
    print("TC6:", hmac_sha256(b"\xaa" * 131,
                              b"Test Using Larger Than Block-Size Key - Hash Key First").hex())

    print("\n== HKDF-SHA-256 (RFC 5869) ==")
    okm1 = hkdf_sha256(b"\x0b" * 22, bytes(range(0x00, 0x0d)),
                       bytes(range(0xf0, 0xfa)), 42)
    print("TC1:", okm1.hex())
    okm3 = hkdf_sha256(b"\x0b" * 22, b"", b"", 42)
    print("TC3:", okm3.hex())

    print("\n== HMAC_DRBG(SHA-256) two-call transcript (CAVP-style) ==")
    entropy = bytes.fromhex(
        "ca851911349384bffe89de1cbdc46e6831e44d34a4fb935ee285dd14b71a7488")
    nonce = bytes.fromhex("659ba96c601dc69fc902940805ec0ca8")
    d = HmacDrbg(entropy, nonce, b"")
    first = d.generate(128)
    second = d.generate(128)
    print("entropy :", entropy.hex())
    print("nonce   :", nonce.hex())
    print("gen1    :", first.hex())
    print("gen2    :", second.hex())

    print("\n== HKDF subkey split used by the sealed-message format ==")
    key = b"\x11" * 32
    iv = b"\x22" * 16
    out = hkdf_sha256(key, iv, b"split", 64)
    print("stream_key:", out[:32].hex())
    print("mac_key   :", out[32:].hex())


if __name__ == "__main__":
    main()
