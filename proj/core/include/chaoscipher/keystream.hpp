#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include "chaoscipher/bytes.hpp"
#include "chaoscipher/drbg.hpp"

namespace chaoscipher {

/// Below this disc radius the parameter-perturbed Julia set stays structurally
/// stable; above 3 the iteration is strongly chaotic.
inline constexpr double kDeltaStableMax = 0.89;
inline constexpr double kDeltaStableDefault = 0.5;
inline constexpr double kDeltaChaoticDefault = 3.5;
inline constexpr int kDefaultWarmUp = 100;

enum class Profile { stable, chaotic, custom };

/// Closed disc of radius delta about the origin from which each per-iteration
/// map parameter is drawn.
struct ParameterDisc {
    double delta = kDeltaChaoticDefault;
    Profile profile = Profile::chaotic;

    static ParameterDisc stable() { return {kDeltaStableDefault, Profile::stable}; }
    static ParameterDisc chaotic() { return {kDeltaChaoticDefault, Profile::chaotic}; }
    static ParameterDisc custom(double delta) { return {delta, Profile::custom}; }

    /// Throws std::invalid_argument when delta contradicts the profile regime.
    void validate() const;
};

struct ExtractionMode {
    enum class Kind { per3, accumulate, running_hash };

    Kind kind = Kind::per3;
    int accumulate_k = 1;  // only meaningful for Kind::accumulate, range [1, 64]

    static ExtractionMode per3() { return {Kind::per3, 1}; }
    static ExtractionMode accumulate(int k);
    static ExtractionMode running_hash() { return {Kind::running_hash, 1}; }

    bool operator==(const ExtractionMode&) const = default;
};

/// Orbit point plus the DRBG realizing the random parameter sequence.
/// iter_count increases by one per map application; reseed_count tracks
/// deterministic orbit restarts after a guard trip.
struct ChaoticState {
    std::complex<double> z;
    std::uint64_t iter_count = 0;
    std::uint64_t reseed_count = 0;
    HmacDrbg drbg;

    ChaoticState(ByteView entropy, ByteView nonce, ByteView personalization);
};

/// Uniform draw from the closed disc |c| <= delta by rejection from the
/// bounding square; one 16-byte DRBG request per attempt, no modulo reduction.
/// Throws std::runtime_error after 256 rejected attempts.
std::complex<double> sample_c(HmacDrbg& drbg, const ParameterDisc& disc);

/// Uniform draw from the annulus 0.1 <= |z0| <= 0.9 (0 is a fixed point of
/// every map in the family and must not seed an orbit).
std::complex<double> sample_z0(HmacDrbg& drbg);

/// One application of z <- z^3 + c*z with c freshly drawn. If the result is
/// non-finite or leaves (1e-6, 1e6] in modulus, the orbit restarts from
/// sample_z0 and reseed_count increments; both endpoints of a session perform
/// the identical restart, so streams stay synchronized.
void step_map(ChaoticState& state, const ParameterDisc& disc);

/// Applies step_map n times, emitting nothing.
void warm_up(ChaoticState& state, const ParameterDisc& disc, int n);

/// Big-endian binary64 of re(z) and im(z) followed by a big-endian 64-bit
/// counter; bit-exact layout shared by every extraction mode.
std::array<std::uint8_t, 24> pack_state(std::complex<double> z, std::uint64_t counter);

/// Deterministic keystream of exactly n bytes from
/// (stream_key, iv, ad, disc, mode, warm). Outputs for growing n are
/// prefix-consistent.
Bytes keystream(ByteView stream_key, ByteView iv, ByteView ad, std::size_t n,
                const ParameterDisc& disc = ParameterDisc::chaotic(),
                const ExtractionMode& mode = ExtractionMode::per3(),
                int warm = kDefaultWarmUp);

/// Number of keystream() invocations in this process. Lets tests confirm that
/// rejected messages never pay for keystream generation.
std::uint64_t keystream_call_count();

}  // namespace chaoscipher
