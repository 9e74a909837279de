#include "chaoscipher/os_random.hpp"

#include <stdexcept>

#if defined(_WIN32)
#error "no Windows entropy backend wired up"
#else
#include <cerrno>
#include <cstdio>
#include <unistd.h>
#endif

namespace chaoscipher {

Bytes secure_bytes(std::size_t n) {
    Bytes out(n);
    if (n == 0) {
        return out;
    }
#if defined(__linux__) || defined(__APPLE__)
    // getentropy caps single requests at 256 bytes.
    std::size_t off = 0;
    while (off < n) {
        std::size_t take = std::min<std::size_t>(256, n - off);
        if (::getentropy(out.data() + off, take) != 0) {
            break;
        }
        off += take;
    }
    if (off == n) {
        return out;
    }
#endif
    std::FILE* f = std::fopen("/dev/urandom", "rb");
    if (f == nullptr) {
        throw std::runtime_error("secure_bytes: OS entropy source unavailable");
    }
    std::size_t got = std::fread(out.data(), 1, n, f);
    std::fclose(f);
    if (got != n) {
        throw std::runtime_error("secure_bytes: short read from /dev/urandom");
    }
    return out;
}

}  // namespace chaoscipher
