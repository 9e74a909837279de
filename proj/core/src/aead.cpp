#include "chaoscipher/aead.hpp"

#include "chaoscipher/hmac.hpp"
#include "chaoscipher/os_random.hpp"

namespace chaoscipher {

namespace {

struct SubKeys {
    Bytes stream_key;
    Bytes mac_key;
};

SubKeys split_key(ByteView key, ByteView iv, ByteView ad) {
    Bytes info = to_bytes("split");
    info.insert(info.end(), ad.begin(), ad.end());
    Bytes okm = hkdf_sha256(key, iv, info, 64);
    return {Bytes(okm.begin(), okm.begin() + 32), Bytes(okm.begin() + 32, okm.end())};
}

Bytes compute_tag(ByteView mac_key, ByteView ad, ByteView iv, ByteView ct) {
    HmacSha256 mac(mac_key);
    mac.update(ad);
    mac.update(iv);
    mac.update(ct);
    Bytes tag(HmacSha256::kTagSize);
    mac.final(tag.data());
    return tag;
}

}  // namespace

SealedMessage SealedMessage::parse(ByteView sealed) {
    if (sealed.size() < kSealOverhead) {
        throw MalformedMessage();
    }
    return {
        sealed.subspan(0, kIvSize),
        sealed.subspan(kIvSize, sealed.size() - kSealOverhead),
        sealed.subspan(sealed.size() - kTagSize, kTagSize),
    };
}

Bytes encrypt(ByteView plaintext, ByteView key, ByteView ad, std::optional<Bytes> iv,
              const ParameterDisc& disc, const ExtractionMode& mode, int warm) {
    if (key.empty()) {
        throw std::invalid_argument("encrypt: key must not be empty");
    }
    Bytes iv_bytes = iv ? std::move(*iv) : secure_bytes(kIvSize);
    if (iv_bytes.size() != kIvSize) {
        throw std::invalid_argument("encrypt: iv must be exactly 16 bytes");
    }

    SubKeys keys = split_key(key, iv_bytes, ad);
    Bytes ks = keystream(keys.stream_key, iv_bytes, ad, plaintext.size(), disc, mode, warm);

    Bytes out;
    out.reserve(plaintext.size() + kSealOverhead);
    out.insert(out.end(), iv_bytes.begin(), iv_bytes.end());
    for (std::size_t i = 0; i < plaintext.size(); ++i) {
        out.push_back(static_cast<std::uint8_t>(plaintext[i] ^ ks[i]));
    }

    Bytes tag = compute_tag(keys.mac_key, ad, iv_bytes,
                            ByteView(out).subspan(kIvSize, plaintext.size()));
    out.insert(out.end(), tag.begin(), tag.end());
    return out;
}

Bytes decrypt(ByteView sealed, ByteView key, ByteView ad, const ParameterDisc& disc,
              const ExtractionMode& mode, int warm) {
    if (key.empty()) {
        throw std::invalid_argument("decrypt: key must not be empty");
    }
    SealedMessage msg = SealedMessage::parse(sealed);

    SubKeys keys = split_key(key, msg.iv, ad);
    Bytes expected = compute_tag(keys.mac_key, ad, msg.iv, msg.ciphertext);
    if (!ct_equal(expected, msg.tag)) {
        throw AuthenticationFailed();
    }

    Bytes ks = keystream(keys.stream_key, msg.iv, ad, msg.ciphertext.size(), disc, mode, warm);
    Bytes plaintext(msg.ciphertext.size());
    for (std::size_t i = 0; i < plaintext.size(); ++i) {
        plaintext[i] = static_cast<std::uint8_t>(msg.ciphertext[i] ^ ks[i]);
    }
    return plaintext;
}

}  // namespace chaoscipher
