#pragma once

#include <array>
#include <cstdint>

#include "chaoscipher/bytes.hpp"

namespace chaoscipher {

/// HMAC_DRBG(SHA-256) per NIST SP 800-90A section 10.1.2, without the reseed
/// interval check (streams at this scale stay far below 2^48 requests).
/// Identical seed material always yields an identical output stream.
///
/// Single-owner mutable: instances may move between threads but must not be
/// shared concurrently.
class HmacDrbg {
  public:
    static constexpr std::size_t kMaxBytesPerRequest = 1u << 16;

    /// entropy must be non-empty; nonce and personalization may be empty.
    HmacDrbg(ByteView entropy, ByteView nonce = {}, ByteView personalization = {});

    /// Returns n bytes, 1 <= n <= 2^16, and steps the internal state.
    Bytes generate(std::size_t n);

    /// Fills a fixed-size array without allocating.
    void generate_into(std::uint8_t* out, std::size_t n);

    std::uint64_t reseed_counter() const { return reseed_counter_; }

  private:
    void update(ByteView provided);

    std::array<std::uint8_t, 32> key_;
    std::array<std::uint8_t, 32> value_;
    std::uint64_t reseed_counter_;
};

}  // namespace chaoscipher
