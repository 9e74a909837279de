#pragma once

#include "chaoscipher/bytes.hpp"
#include "chaoscipher/sha256.hpp"

namespace chaoscipher {

/// Streaming HMAC-SHA-256 (RFC 2104).
class HmacSha256 {
  public:
    static constexpr std::size_t kTagSize = Sha256::kDigestSize;

    explicit HmacSha256(ByteView key) { set_key(key); }

    void set_key(ByteView key);
    void reset();
    void update(ByteView data);
    void final(std::uint8_t out[kTagSize]);

  private:
    std::uint8_t ipad_key_[Sha256::kBlockSize];
    std::uint8_t opad_key_[Sha256::kBlockSize];
    Sha256 inner_;
};

Bytes hmac_sha256(ByteView key, ByteView message);

/// RFC 5869 extract-then-expand. `length` must be in [1, 255*32].
Bytes hkdf_sha256(ByteView ikm, ByteView salt, ByteView info, std::size_t length);

/// Equal length and content. Scans every byte regardless of where the first
/// difference sits, so timing does not reveal the mismatch position.
bool ct_equal(ByteView a, ByteView b);

}  // namespace chaoscipher
