#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "chaoscipher/bytes.hpp"

namespace chaoscipher::julia {

enum class Family { cubic, quadratic };

struct Window {
    double x0 = -1.6;
    double y0 = -1.6;
    double x1 = 1.6;
    double y1 = 1.6;
};

/// Deterministic recipe for a parameter sequence: (seed, delta) fixes the
/// realized c_n list exactly.
struct OmegaSpec {
    Bytes seed;
    double delta = 0.0;
    int length = 0;
};

/// Realizes the c_n sequence through a DRBG personalized for this module;
/// every |c_n| <= delta.
std::vector<std::complex<double>> realize_omega(const OmegaSpec& spec);

/// Once |z| >= sqrt(2+delta) the cubic orbit at least doubles in modulus per
/// step, so this radius is a sound escape bound; the quadratic family uses
/// the classic max(2, delta).
double default_escape_radius(Family family, double delta);

/// Smallest m >= 1 with |f_omega^m(z0)| > escape_radius, or max_iter when the
/// orbit never escapes. Requires omega.size() >= max_iter.
int escape_time(std::complex<double> z0, std::span<const std::complex<double>> omega,
                Family family, int max_iter, double escape_radius);

/// Escape-iteration grid over a pixel window; max_iter marks membership in
/// the filled-set approximation.
struct JuliaApprox {
    Window window;
    int width = 0;
    int height = 0;
    int max_iter = 0;
    Family family = Family::cubic;
    std::vector<int> escape_iter;  // row-major, height rows by width columns

    bool is_member(int col, int row) const {
        return escape_iter[std::size_t(row) * std::size_t(width) + std::size_t(col)] == max_iter;
    }
    std::size_t member_count() const;
};

/// Renders escape_time per pixel center. All pixels share one omega, realized
/// up front; rows may be evaluated in parallel (threads = 0 picks the
/// hardware count) and the result is identical for every thread count.
JuliaApprox render(const OmegaSpec& spec, const Window& window, int width, int height,
                   int max_iter, Family family, int threads = 0);

/// Symmetric-difference fraction |A ^ B| / max(|A u B|, 1) between the member
/// sets of two independent omega realizations at the same delta.
double stability_distance(double delta, ByteView seed_a, ByteView seed_b, const Window& window,
                          int width, int height, int max_iter, Family family = Family::cubic,
                          int threads = 0);

/// Binary PGM (P5), escape counts scaled to 0..255.
std::string to_pgm(const JuliaApprox& approx);

/// Raw grid dump for offline analysis.
std::string to_json(const JuliaApprox& approx);

}  // namespace chaoscipher::julia
