#include "chaoscipher/drbg.hpp"

#include <cstring>
#include <stdexcept>

#include "chaoscipher/hmac.hpp"

namespace chaoscipher {

HmacDrbg::HmacDrbg(ByteView entropy, ByteView nonce, ByteView personalization) {
    if (entropy.empty()) {
        throw std::invalid_argument("HmacDrbg: entropy must not be empty");
    }
    key_.fill(0x00);
    value_.fill(0x01);
    Bytes seed_material;
    seed_material.reserve(entropy.size() + nonce.size() + personalization.size());
    seed_material.insert(seed_material.end(), entropy.begin(), entropy.end());
    seed_material.insert(seed_material.end(), nonce.begin(), nonce.end());
    seed_material.insert(seed_material.end(), personalization.begin(), personalization.end());
    update(seed_material);
    reseed_counter_ = 1;
}

void HmacDrbg::update(ByteView provided) {
    // K = HMAC(K, V || 0x00 || provided); V = HMAC(K, V)
    {
        HmacSha256 mac(key_);
        mac.update(value_);
        const std::uint8_t sep = 0x00;
        mac.update(ByteView(&sep, 1));
        mac.update(provided);
        mac.final(key_.data());
    }
    {
        HmacSha256 mac(key_);
        mac.update(value_);
        mac.final(value_.data());
    }
    if (provided.empty()) {
        return;
    }
    {
        HmacSha256 mac(key_);
        mac.update(value_);
        const std::uint8_t sep = 0x01;
        mac.update(ByteView(&sep, 1));
        mac.update(provided);
        mac.final(key_.data());
    }
    {
        HmacSha256 mac(key_);
        mac.update(value_);
        mac.final(value_.data());
    }
}

void HmacDrbg::generate_into(std::uint8_t* out, std::size_t n) {
    if (n < 1 || n > kMaxBytesPerRequest) {
        throw std::invalid_argument("HmacDrbg::generate: request size out of range");
    }
    std::size_t produced = 0;
    while (produced < n) {
        HmacSha256 mac(key_);
        mac.update(value_);
        mac.final(value_.data());
        std::size_t take = std::min(value_.size(), n - produced);
        std::memcpy(out + produced, value_.data(), take);
        produced += take;
    }
    update({});
    ++reseed_counter_;
}

Bytes HmacDrbg::generate(std::size_t n) {
    Bytes out(n);
    generate_into(out.data(), n);
    return out;
}

}  // namespace chaoscipher
