#pragma once

#include <optional>
#include <stdexcept>

#include "chaoscipher/bytes.hpp"
#include "chaoscipher/keystream.hpp"

namespace chaoscipher {

inline constexpr std::size_t kIvSize = 16;
inline constexpr std::size_t kTagSize = 32;
inline constexpr std::size_t kSealOverhead = kIvSize + kTagSize;

class CipherError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input shorter than the fixed iv+tag framing.
class MalformedMessage : public CipherError {
  public:
    MalformedMessage() : CipherError("malformed message") {}
};

/// Tag mismatch. Carries no detail beyond its class.
class AuthenticationFailed : public CipherError {
  public:
    AuthenticationFailed() : CipherError("authentication failed") {}
};

/// Parsed view over the wire layout iv(16) || ciphertext || tag(32).
struct SealedMessage {
    ByteView iv;
    ByteView ciphertext;
    ByteView tag;

    /// Throws MalformedMessage for inputs shorter than 48 bytes.
    static SealedMessage parse(ByteView sealed);
};

/// Encrypt-then-MAC seal. The iv defaults to 16 fresh OS-random bytes; a
/// caller-provided iv must be exactly 16 bytes and unique per key. Stream and
/// MAC subkeys come from HKDF(ikm=key, salt=iv, info="split"||ad, 64), the
/// ciphertext is plaintext XOR keystream, and the tag authenticates
/// ad || iv || ciphertext. delta/mode/warm are not encoded in the output;
/// both parties must agree on them out of band.
Bytes encrypt(ByteView plaintext, ByteView key, ByteView ad = {},
              std::optional<Bytes> iv = std::nullopt,
              const ParameterDisc& disc = ParameterDisc::chaotic(),
              const ExtractionMode& mode = ExtractionMode::per3(),
              int warm = kDefaultWarmUp);

/// Verifies the tag in constant time before any keystream work, then
/// decrypts. Throws MalformedMessage / AuthenticationFailed.
Bytes decrypt(ByteView sealed, ByteView key, ByteView ad = {},
              const ParameterDisc& disc = ParameterDisc::chaotic(),
              const ExtractionMode& mode = ExtractionMode::per3(),
              int warm = kDefaultWarmUp);

}  // namespace chaoscipher
