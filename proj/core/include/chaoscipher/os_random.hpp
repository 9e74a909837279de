#pragma once

#include "chaoscipher/bytes.hpp"

namespace chaoscipher {

/// n bytes from the operating system CSPRNG. Throws std::runtime_error if the
/// entropy source is unavailable.
Bytes secure_bytes(std::size_t n);

}  // namespace chaoscipher
