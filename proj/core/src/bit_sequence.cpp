#include "chaoscipher/bit_sequence.hpp"

#include <algorithm>
#include <stdexcept>

namespace chaoscipher {

BitSequence BitSequence::from_bytes(ByteView bytes) {
    std::vector<std::uint8_t> bits;
    bits.reserve(bytes.size() * 8);
    for (std::uint8_t b : bytes) {
        for (int i = 7; i >= 0; --i) {
            bits.push_back((b >> i) & 1);
        }
    }
    return BitSequence(std::move(bits));
}

BitSequence BitSequence::from_string(std::string_view s) {
    std::vector<std::uint8_t> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("BitSequence: expected '0' or '1'");
        }
        bits.push_back(c == '1' ? 1 : 0);
    }
    return BitSequence(std::move(bits));
}

std::size_t BitSequence::count_ones() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

BitSequence BitSequence::reversed() const {
    std::vector<std::uint8_t> r(bits_.rbegin(), bits_.rend());
    return BitSequence(std::move(r));
}

BitSequence BitSequence::complemented() const {
    std::vector<std::uint8_t> c(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        c[i] = bits_[i] ^ 1;
    }
    return BitSequence(std::move(c));
}

}  // namespace chaoscipher
