#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "chaoscipher/bytes.hpp"

namespace chaoscipher {

/// Bit string under test. Bytes unpack MSB-first, matching how the keystream
/// is consumed by the batteries. Stored one bit per byte for simple indexing;
/// inputs at this scale stay within a few megabytes.
class BitSequence {
  public:
    BitSequence() = default;

    explicit BitSequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

    /// All 8*bytes.size() bits, MSB first within each byte.
    static BitSequence from_bytes(ByteView bytes);

    /// Parses a literal like "1011010101"; anything but '0'/'1' throws.
    static BitSequence from_string(std::string_view s);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }

    std::size_t count_ones() const;
    BitSequence reversed() const;
    BitSequence complemented() const;

    const std::vector<std::uint8_t>& bits() const { return bits_; }

  private:
    std::vector<std::uint8_t> bits_;
};

}  // namespace chaoscipher
