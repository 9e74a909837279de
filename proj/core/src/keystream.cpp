#include "chaoscipher/keystream.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "chaoscipher/hmac.hpp"
#include "chaoscipher/sha256.hpp"

namespace chaoscipher {

namespace {

std::atomic<std::uint64_t> g_keystream_calls{0};

constexpr int kRejectionCap = 256;
constexpr double kOrbitMagSqMax = 1e12;   // |z| > 1e6
constexpr double kOrbitMagSqMin = 1e-12;  // |z| < 1e-6

inline double unit_from_be8(const std::uint8_t* p) {
    // Top 53 bits of a big-endian word, scaled into [0, 1).
    std::uint64_t u = load_be64(p);
    return double(u >> 11) * 0x1.0p-53;
}

// One rejection attempt: a single 16-byte DRBG request split into the two
// coordinates of a point in the square [-half, half]^2.
inline std::complex<double> draw_square(HmacDrbg& drbg, double half) {
    std::uint8_t raw[16];
    drbg.generate_into(raw, sizeof raw);
    double x = half * (2.0 * unit_from_be8(raw) - 1.0);
    double y = half * (2.0 * unit_from_be8(raw + 8) - 1.0);
    return {x, y};
}

}  // namespace

void ParameterDisc::validate() const {
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("ParameterDisc: delta must be finite and non-negative");
    }
    if (profile == Profile::stable && !(delta < kDeltaStableMax)) {
        throw std::invalid_argument("ParameterDisc: stable profile requires delta < 0.89");
    }
    if (profile == Profile::chaotic && !(delta > 3.0)) {
        throw std::invalid_argument("ParameterDisc: chaotic profile requires delta > 3");
    }
}

ExtractionMode ExtractionMode::accumulate(int k) {
    if (k < 1 || k > 64) {
        throw std::invalid_argument("ExtractionMode: accumulate k must be in [1, 64]");
    }
    return {Kind::accumulate, k};
}

ChaoticState::ChaoticState(ByteView entropy, ByteView nonce, ByteView personalization)
    : drbg(entropy, nonce, personalization) {
    z = sample_z0(drbg);
}

std::complex<double> sample_c(HmacDrbg& drbg, const ParameterDisc& disc) {
    const double d = disc.delta;
    const double d_sq = d * d;
    for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
        std::complex<double> c = draw_square(drbg, d);
        double m2 = c.real() * c.real() + c.imag() * c.imag();
        if (m2 <= d_sq) {
            return c;
        }
    }
    throw std::runtime_error("sample_c: rejection cap exceeded");
}

std::complex<double> sample_z0(HmacDrbg& drbg) {
    for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
        std::complex<double> z = draw_square(drbg, 0.9);
        double m2 = z.real() * z.real() + z.imag() * z.imag();
        if (m2 >= 0.01 && m2 <= 0.81) {
            return z;
        }
    }
    throw std::runtime_error("sample_z0: rejection cap exceeded");
}

void step_map(ChaoticState& state, const ParameterDisc& disc) {
    std::complex<double> c = sample_c(state.drbg, disc);
    // z <- z*(z^2 + c), expanded so the rounding sequence is fixed. This path
    // must stay free of FMA contraction (core is built with -ffp-contract=off).
    const double zr = state.z.real();
    const double zi = state.z.imag();
    const double wr = zr * zr - zi * zi;
    const double wi = 2.0 * zr * zi;
    const double sr = wr + c.real();
    const double si = wi + c.imag();
    double nr = sr * zr - si * zi;
    double ni = sr * zi + si * zr;
    const double m2 = nr * nr + ni * ni;
    if (!std::isfinite(nr) || !std::isfinite(ni) || m2 > kOrbitMagSqMax || m2 < kOrbitMagSqMin) {
        std::complex<double> fresh = sample_z0(state.drbg);
        nr = fresh.real();
        ni = fresh.imag();
        ++state.reseed_count;
    }
    state.z = {nr, ni};
    ++state.iter_count;
}

void warm_up(ChaoticState& state, const ParameterDisc& disc, int n) {
    for (int i = 0; i < n; ++i) {
        step_map(state, disc);
    }
}

std::array<std::uint8_t, 24> pack_state(std::complex<double> z, std::uint64_t counter) {
    std::array<std::uint8_t, 24> out;
    store_be64(std::bit_cast<std::uint64_t>(z.real()), out.data());
    store_be64(std::bit_cast<std::uint64_t>(z.imag()), out.data() + 8);
    store_be64(counter, out.data() + 16);
    return out;
}

Bytes keystream(ByteView stream_key, ByteView iv, ByteView ad, std::size_t n,
                const ParameterDisc& disc, const ExtractionMode& mode, int warm) {
    g_keystream_calls.fetch_add(1, std::memory_order_relaxed);
    if (n == 0) {
        return {};
    }
    if (warm < 0) {
        throw std::invalid_argument("keystream: warm must be non-negative");
    }

    ChaoticState state(stream_key, iv, ad);
    warm_up(state, disc, warm);

    Bytes out;
    out.reserve((n + 31) & ~std::size_t(31));
    std::uint8_t block[HmacSha256::kTagSize];
    Sha256 running;

    for (std::uint64_t block_index = 0; out.size() < n; ++block_index) {
        HmacSha256 mac(stream_key);
        switch (mode.kind) {
            case ExtractionMode::Kind::per3: {
                step_map(state, disc);
                step_map(state, disc);
                step_map(state, disc);
                mac.update(pack_state(state.z, block_index));
                break;
            }
            case ExtractionMode::Kind::accumulate: {
                for (int j = 0; j < mode.accumulate_k; ++j) {
                    step_map(state, disc);
                    mac.update(pack_state(state.z, state.iter_count));
                }
                std::uint8_t idx[8];
                store_be64(block_index, idx);
                mac.update(ByteView(idx, 8));
                break;
            }
            case ExtractionMode::Kind::running_hash: {
                step_map(state, disc);
                running.update(pack_state(state.z, state.iter_count));
                Sha256 snapshot = running;
                std::uint8_t digest[Sha256::kDigestSize];
                snapshot.final(digest);
                mac.update(ByteView(digest, sizeof digest));
                std::uint8_t idx[8];
                store_be64(block_index, idx);
                mac.update(ByteView(idx, 8));
                break;
            }
        }
        mac.final(block);
        std::size_t take = std::min(sizeof block, n - out.size());
        out.insert(out.end(), block, block + take);
    }
    return out;
}

std::uint64_t keystream_call_count() {
    return g_keystream_calls.load(std::memory_order_relaxed);
}

}  // namespace chaoscipher
