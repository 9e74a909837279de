#include "chaoscipher/ent.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "chaoscipher/special_functions.hpp"

namespace chaoscipher::ent {

namespace {

std::array<std::size_t, 256> histogram(ByteView data) {
    std::array<std::size_t, 256> counts{};
    for (std::uint8_t b : data) {
        ++counts[b];
    }
    return counts;
}

}  // namespace

double entropy(ByteView data) {
    if (data.empty()) {
        throw std::invalid_argument("ent::entropy: empty input");
    }
    const auto counts = histogram(data);
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c > 0) {
            double p = double(c) / double(data.size());
            h -= p * std::log2(p);
        }
    }
    return h;
}

double optimum_compression(double entropy_bits_per_byte) {
    if (entropy_bits_per_byte < 0.0 || entropy_bits_per_byte > 8.0) {
        throw std::invalid_argument("ent::optimum_compression: entropy outside [0, 8]");
    }
    return entropy_bits_per_byte / 8.0;
}

std::pair<double, double> chi_square(ByteView data) {
    if (data.empty()) {
        throw std::invalid_argument("ent::chi_square: empty input");
    }
    const auto counts = histogram(data);
    const double expected = double(data.size()) / 256.0;
    double stat = 0.0;
    for (std::size_t c : counts) {
        stat += (double(c) - expected) * (double(c) - expected) / expected;
    }
    const double percentile = 100.0 * igamc(255.0 / 2.0, stat / 2.0);
    return {stat, percentile};
}

double mean(ByteView data) {
    if (data.empty()) {
        throw std::invalid_argument("ent::mean: empty input");
    }
    double sum = 0.0;
    for (std::uint8_t b : data) {
        sum += b;
    }
    return sum / double(data.size());
}

std::pair<double, double> monte_carlo_pi(ByteView data) {
    if (data.size() < 6) {
        throw std::invalid_argument("ent::monte_carlo_pi: needs at least 6 bytes");
    }
    const std::size_t points = data.size() / 6;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < points; ++i) {
        const std::uint8_t* g = data.data() + 6 * i;
        const double scale = 16777216.0;  // 2^24
        double x = double((std::uint32_t(g[0]) << 16) | (std::uint32_t(g[1]) << 8) | g[2]) / scale;
        double y = double((std::uint32_t(g[3]) << 16) | (std::uint32_t(g[4]) << 8) | g[5]) / scale;
        hits += (x * x + y * y) < 1.0;
    }
    const double estimate = 4.0 * double(hits) / double(points);
    const double error = 100.0 * std::fabs(estimate - std::numbers::pi) / std::numbers::pi;
    return {estimate, error};
}

double serial_correlation(ByteView data, bool* degenerate) {
    if (data.size() < 2) {
        throw std::invalid_argument("ent::serial_correlation: needs at least 2 bytes");
    }
    if (degenerate != nullptr) {
        *degenerate = false;
    }
    const std::size_t n = data.size() - 1;
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += data[i];
        mean_b += data[i + 1];
    }
    mean_a /= double(n);
    mean_b /= double(n);
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double da = double(data[i]) - mean_a;
        double db = double(data[i + 1]) - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) {
        if (degenerate != nullptr) {
            *degenerate = true;
        }
        return 0.0;
    }
    return cov / std::sqrt(var_a * var_b);
}

EntReport report(ByteView data) {
    EntReport r;
    r.length = data.size();
    r.entropy_bits_per_byte = entropy(data);
    r.optimum_compression = optimum_compression(r.entropy_bits_per_byte);
    auto [stat, percentile] = chi_square(data);
    r.chi_square_stat = stat;
    r.chi_square_percentile = percentile;
    r.arithmetic_mean = mean(data);
    if (data.size() >= 6) {
        auto [pi_est, err] = monte_carlo_pi(data);
        r.monte_carlo_pi = pi_est;
        r.pi_error_percent = err;
    }
    if (data.size() >= 2) {
        r.serial_correlation = serial_correlation(data, &r.serial_correlation_degenerate);
    }
    return r;
}

std::string text_report(const EntReport& r) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    os << "Statistical Test                 Expected      Result\n";
    os << "------------------------------------------------------\n";
    os << "Entropy (bits/byte)              ~8            " << r.entropy_bits_per_byte << "\n";
    os << "Optimum Compression              ~1            " << r.optimum_compression << "\n";
    os << "Chi-Square percentile            10%-90%       " << r.chi_square_percentile << "%\n";
    os << "Arithmetic Mean                  127.5         " << r.arithmetic_mean << "\n";
    os << "Monte Carlo Value for Pi         0% error      " << r.pi_error_percent << "%\n";
    os << "Serial Correlation Coefficient   0             " << r.serial_correlation;
    if (r.serial_correlation_degenerate) {
        os << " (degenerate: zero variance)";
    }
    os << "\n";
    return os.str();
}

std::string json_report(const EntReport& r) {
    nlohmann::json j;
    j["length"] = r.length;
    j["entropy_bits_per_byte"] = r.entropy_bits_per_byte;
    j["optimum_compression"] = r.optimum_compression;
    j["chi_square_stat"] = r.chi_square_stat;
    j["chi_square_percentile"] = r.chi_square_percentile;
    j["arithmetic_mean"] = r.arithmetic_mean;
    j["monte_carlo_pi"] = r.monte_carlo_pi;
    j["pi_error_percent"] = r.pi_error_percent;
    j["serial_correlation"] = r.serial_correlation;
    j["serial_correlation_degenerate"] = r.serial_correlation_degenerate;
    return j.dump(1);
}

}  // namespace chaoscipher::ent
