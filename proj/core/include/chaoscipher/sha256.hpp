#pragma once

#include <array>
#include <cstdint>

#include "chaoscipher/bytes.hpp"

namespace chaoscipher {

/// Streaming SHA-256 (FIPS 180-4). Gated by the standard test vectors in the
/// primitive test suite.
class Sha256 {
  public:
    static constexpr std::size_t kDigestSize = 32;
    static constexpr std::size_t kBlockSize = 64;

    Sha256() { reset(); }

    void reset();
    void update(ByteView data);
    void update(const void* data, std::size_t len) {
        update(ByteView(static_cast<const std::uint8_t*>(data), len));
    }

    /// Finalizes into `out`. The object must be reset() before reuse.
    void final(std::uint8_t out[kDigestSize]);

    std::array<std::uint8_t, kDigestSize> digest() {
        std::array<std::uint8_t, kDigestSize> out{};
        final(out.data());
        return out;
    }

  private:
    void compress(const std::uint8_t block[kBlockSize]);

    std::uint32_t state_[8];
    std::uint64_t bit_count_;
    std::uint8_t buffer_[kBlockSize];
    std::size_t buffer_len_;
};

Bytes sha256(ByteView data);

}  // namespace chaoscipher
