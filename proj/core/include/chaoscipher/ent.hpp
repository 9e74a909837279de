#pragma once

#include <string>
#include <utility>

#include "chaoscipher/bytes.hpp"

namespace chaoscipher::ent {

/// Byte-level randomness metrics in the classic six-row layout.
struct EntReport {
    double entropy_bits_per_byte = 0.0;  // [0, 8]
    double optimum_compression = 0.0;    // entropy / 8
    double chi_square_stat = 0.0;
    double chi_square_percentile = 0.0;  // 100 * P(chi2_255 > stat)
    double arithmetic_mean = 0.0;        // expected 127.5
    double monte_carlo_pi = 0.0;
    double pi_error_percent = 0.0;
    double serial_correlation = 0.0;     // lag-1 Pearson, [-1, 1]
    bool serial_correlation_degenerate = false;  // zero variance input
    std::size_t length = 0;
};

/// Shannon entropy over the 256 byte values, in bits per byte.
double entropy(ByteView data);

/// entropy / 8; the theoretical compression ratio.
double optimum_compression(double entropy_bits_per_byte);

/// Chi-square over 256 equiprobable bins and the exceedance percentile
/// 100 * P(chi2_255 > statistic) — the probability a truly random stream
/// scores higher.
std::pair<double, double> chi_square(ByteView data);

double mean(ByteView data);

/// Consumes 6-byte groups: two 24-bit big-endian coordinates in the unit
/// square; a point counts as inside when x^2 + y^2 < 1 strictly. Returns
/// (pi estimate, error percent); leftover bytes are ignored. Requires at
/// least one full group.
std::pair<double, double> monte_carlo_pi(ByteView data);

/// Lag-1 Pearson correlation of adjacent bytes (no wraparound). Returns 0
/// and sets *degenerate when either margin has zero variance.
double serial_correlation(ByteView data, bool* degenerate = nullptr);

EntReport report(ByteView data);

std::string text_report(const EntReport& r);
std::string json_report(const EntReport& r);

}  // namespace chaoscipher::ent
