#include "chaoscipher/julia.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "chaoscipher/drbg.hpp"
#include "chaoscipher/keystream.hpp"

namespace chaoscipher::julia {

std::vector<std::complex<double>> realize_omega(const OmegaSpec& spec) {
    if (spec.length < 1) {
        throw std::invalid_argument("realize_omega: length must be >= 1");
    }
    if (spec.delta < 0.0 || !std::isfinite(spec.delta)) {
        throw std::invalid_argument("realize_omega: delta must be finite and non-negative");
    }
    static const Bytes personalization = to_bytes("julia");
    HmacDrbg drbg(spec.seed, {}, personalization);
    ParameterDisc disc = ParameterDisc::custom(spec.delta);
    std::vector<std::complex<double>> omega;
    omega.reserve(std::size_t(spec.length));
    for (int i = 0; i < spec.length; ++i) {
        omega.push_back(sample_c(drbg, disc));
    }
    return omega;
}

double default_escape_radius(Family family, double delta) {
    if (family == Family::cubic) {
        return std::sqrt(2.0 + delta);
    }
    return std::max(2.0, delta);
}

int escape_time(std::complex<double> z0, std::span<const std::complex<double>> omega,
                Family family, int max_iter, double escape_radius) {
    if (int(omega.size()) < max_iter) {
        throw std::invalid_argument("escape_time: omega shorter than max_iter");
    }
    const double r_sq = escape_radius * escape_radius;
    double zr = z0.real();
    double zi = z0.imag();
    for (int m = 1; m <= max_iter; ++m) {
        const std::complex<double>& c = omega[std::size_t(m - 1)];
        double nr, ni;
        if (family == Family::cubic) {
            // z <- z*(z^2 + c), same rounding order as the keystream map
            const double wr = zr * zr - zi * zi;
            const double wi = 2.0 * zr * zi;
            const double sr = wr + c.real();
            const double si = wi + c.imag();
            nr = sr * zr - si * zi;
            ni = sr * zi + si * zr;
        } else {
            nr = zr * zr - zi * zi + c.real();
            ni = 2.0 * zr * zi + c.imag();
        }
        zr = nr;
        zi = ni;
        const double mag_sq = zr * zr + zi * zi;
        if (!(mag_sq <= r_sq)) {  // non-finite values escape too
            return m;
        }
    }
    return max_iter;
}

std::size_t JuliaApprox::member_count() const {
    return std::size_t(std::count(escape_iter.begin(), escape_iter.end(), max_iter));
}

JuliaApprox render(const OmegaSpec& spec, const Window& window, int width, int height,
                   int max_iter, Family family, int threads) {
    if (width < 2 || height < 2) {
        throw std::invalid_argument("render: resolution must be at least 2x2");
    }
    if (max_iter < 1) {
        throw std::invalid_argument("render: max_iter must be >= 1");
    }
    OmegaSpec full = spec;
    full.length = std::max(spec.length, max_iter);
    const auto omega = realize_omega(full);
    const double radius = default_escape_radius(family, spec.delta);

    JuliaApprox out;
    out.window = window;
    out.width = width;
    out.height = height;
    out.max_iter = max_iter;
    out.family = family;
    out.escape_iter.assign(std::size_t(width) * std::size_t(height), 0);

    const double dx = (window.x1 - window.x0) / double(width);
    const double dy = (window.y1 - window.y0) / double(height);

    auto render_rows = [&](int row_begin, int row_end) {
        for (int j = row_begin; j < row_end; ++j) {
            const double y = window.y0 + (double(j) + 0.5) * dy;
            for (int i = 0; i < width; ++i) {
                const double x = window.x0 + (double(i) + 0.5) * dx;
                out.escape_iter[std::size_t(j) * std::size_t(width) + std::size_t(i)] =
                    escape_time({x, y}, omega, family, max_iter, radius);
            }
        }
    };

    int n_threads = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, height);
    if (n_threads == 1) {
        render_rows(0, height);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(n_threads));
    const int rows_per = (height + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
        const int begin = t * rows_per;
        const int end = std::min(height, begin + rows_per);
        if (begin < end) {
            pool.emplace_back(render_rows, begin, end);
        }
    }
    for (auto& th : pool) {
        th.join();
    }
    return out;
}

double stability_distance(double delta, ByteView seed_a, ByteView seed_b, const Window& window,
                          int width, int height, int max_iter, Family family, int threads) {
    OmegaSpec spec_a{Bytes(seed_a.begin(), seed_a.end()), delta, max_iter};
    OmegaSpec spec_b{Bytes(seed_b.begin(), seed_b.end()), delta, max_iter};
    const JuliaApprox a = render(spec_a, window, width, height, max_iter, family, threads);
    const JuliaApprox b = render(spec_b, window, width, height, max_iter, family, threads);
    std::size_t sym_diff = 0;
    std::size_t union_count = 0;
    for (std::size_t i = 0; i < a.escape_iter.size(); ++i) {
        const bool in_a = a.escape_iter[i] == a.max_iter;
        const bool in_b = b.escape_iter[i] == b.max_iter;
        sym_diff += in_a != in_b;
        union_count += in_a || in_b;
    }
    return double(sym_diff) / double(std::max<std::size_t>(union_count, 1));
}

std::string to_pgm(const JuliaApprox& approx) {
    std::ostringstream os;
    os << "P5\n" << approx.width << " " << approx.height << "\n255\n";
    for (int v : approx.escape_iter) {
        os.put(char(static_cast<unsigned char>((255 * v) / approx.max_iter)));
    }
    return os.str();
}

std::string to_json(const JuliaApprox& approx) {
    nlohmann::json j;
    j["window"] = {approx.window.x0, approx.window.y0, approx.window.x1, approx.window.y1};
    j["width"] = approx.width;
    j["height"] = approx.height;
    j["max_iter"] = approx.max_iter;
    j["family"] = approx.family == Family::cubic ? "cubic" : "quadratic";
    j["escape_iter"] = approx.escape_iter;
    return j.dump();
}

}  // namespace chaoscipher::julia
