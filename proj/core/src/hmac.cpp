#include "chaoscipher/hmac.hpp"

#include <cstring>
#include <stdexcept>

namespace chaoscipher {

void HmacSha256::set_key(ByteView key) {
    std::uint8_t block_key[Sha256::kBlockSize] = {0};
    if (key.size() > Sha256::kBlockSize) {
        Bytes hashed = sha256(key);
        std::memcpy(block_key, hashed.data(), hashed.size());
    } else {
        std::memcpy(block_key, key.data(), key.size());
    }
    for (std::size_t i = 0; i < Sha256::kBlockSize; ++i) {
        ipad_key_[i] = block_key[i] ^ 0x36;
        opad_key_[i] = block_key[i] ^ 0x5c;
    }
    reset();
}

void HmacSha256::reset() {
    inner_.reset();
    inner_.update(ipad_key_, Sha256::kBlockSize);
}

void HmacSha256::update(ByteView data) {
    inner_.update(data);
}

void HmacSha256::final(std::uint8_t out[kTagSize]) {
    std::uint8_t inner_digest[Sha256::kDigestSize];
    inner_.final(inner_digest);
    Sha256 outer;
    outer.update(opad_key_, Sha256::kBlockSize);
    outer.update(inner_digest, Sha256::kDigestSize);
    outer.final(out);
}

Bytes hmac_sha256(ByteView key, ByteView message) {
    HmacSha256 mac(key);
    mac.update(message);
    Bytes out(HmacSha256::kTagSize);
    mac.final(out.data());
    return out;
}

Bytes hkdf_sha256(ByteView ikm, ByteView salt, ByteView info, std::size_t length) {
    if (length < 1 || length > 255 * Sha256::kDigestSize) {
        throw std::invalid_argument("hkdf_sha256: length out of range");
    }
    static const std::uint8_t zero_salt[Sha256::kDigestSize] = {0};
    Bytes prk = salt.empty() ? hmac_sha256(ByteView(zero_salt, sizeof zero_salt), ikm)
                             : hmac_sha256(salt, ikm);

    Bytes okm;
    okm.reserve(length);
    Bytes t;
    std::uint8_t counter = 1;
    while (okm.size() < length) {
        HmacSha256 mac(prk);
        mac.update(t);
        mac.update(info);
        mac.update(ByteView(&counter, 1));
        t.resize(HmacSha256::kTagSize);
        mac.final(t.data());
        std::size_t take = std::min(t.size(), length - okm.size());
        okm.insert(okm.end(), t.begin(), t.begin() + take);
        ++counter;
    }
    return okm;
}

bool ct_equal(ByteView a, ByteView b) {
    if (a.size() != b.size()) {
        return false;
    }
    std::uint8_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc |= static_cast<std::uint8_t>(a[i] ^ b[i]);
    }
    return acc == 0;
}

}  // namespace chaoscipher
