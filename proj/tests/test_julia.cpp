// Escape-time renderer tests: analytic unit-disc cases, pixel symmetry,
// member-set monotonicity in max_iter, the escape-radius soundness bound,
// and the stability probe.

#include <doctest.h>

#include <cmath>
#include <complex>

#include "chaoscipher/bytes.hpp"
#include "chaoscipher/julia.hpp"

using namespace chaoscipher;
namespace cj = chaoscipher::julia;

namespace {

cj::OmegaSpec spec_of(std::uint8_t tag, double delta, int length) {
    return {Bytes(16, tag), delta, length};
}

}  // namespace

TEST_CASE("realize_omega determinism and disc bound") {
    auto a = cj::realize_omega(spec_of(0x01, 2.0, 500));
    auto b = cj::realize_omega(spec_of(0x01, 2.0, 500));
    CHECK(a == b);
    CHECK(a.size() == 500);

    double max_mod = 0.0;
    auto big = cj::realize_omega(spec_of(0x02, 2.0, 10000));
    for (auto c : big) {
        max_mod = std::max(max_mod, std::abs(c));
        CHECK(std::abs(c) <= 2.0);
    }
    // the sup is approached over 1e4 draws
    CHECK(max_mod > 1.9);

    // delta 0 forces the zero sequence
    for (auto c : cj::realize_omega(spec_of(0x03, 0.0, 100))) {
        CHECK(c == std::complex<double>(0.0, 0.0));
    }

    CHECK_THROWS_AS(cj::realize_omega(spec_of(0x04, 1.0, 0)), std::invalid_argument);
}

TEST_CASE("escape_time analytic cases at delta=0") {
    std::vector<std::complex<double>> zeros(200, {0.0, 0.0});
    double radius = cj::default_escape_radius(cj::Family::cubic, 0.0);

    // inside the unit disc the pure cube contracts
    CHECK(cj::escape_time({0.5, 0.0}, zeros, cj::Family::cubic, 200, radius) == 200);
    // outside it expands: 1.5 -> 3.375 > sqrt(2) on the first step
    CHECK(cj::escape_time({1.5, 0.0}, zeros, cj::Family::cubic, 200, radius) == 1);
    // the origin is fixed for every map in the family
    CHECK(cj::escape_time({0.0, 0.0}, zeros, cj::Family::cubic, 200, radius) == 200);

    auto omega = cj::realize_omega(spec_of(0x05, 3.5, 200));
    double r35 = cj::default_escape_radius(cj::Family::cubic, 3.5);
    CHECK(cj::escape_time({0.0, 0.0}, omega, cj::Family::cubic, 200, r35) == 200);
}

TEST_CASE("delta=0 renders classify the unit disc, both families") {
    for (auto family : {cj::Family::cubic, cj::Family::quadratic}) {
        cj::Window window{-1.5, -1.5, 1.5, 1.5};
        auto img = cj::render(spec_of(0x00, 0.0, 100), window, 64, 64, 100, family);
        CHECK(img.width == 64);
        CHECK(img.height == 64);
        CHECK(img.escape_iter.size() == 64u * 64u);
        for (int row = 0; row < 64; ++row) {
            for (int col = 0; col < 64; ++col) {
                double x = window.x0 + (col + 0.5) * 3.0 / 64.0;
                double y = window.y0 + (row + 0.5) * 3.0 / 64.0;
                double m = std::hypot(x, y);
                if (m <= 0.9) {
                    CHECK(img.is_member(col, row));
                } else if (m >= 1.1) {
                    CHECK_FALSE(img.is_member(col, row));
                }
            }
        }
    }
}

TEST_CASE("renders are symmetric under z -> -z") {
    for (auto family : {cj::Family::cubic, cj::Family::quadratic}) {
        for (double delta : {0.5, 3.5}) {
            auto img = cj::render(spec_of(0x3c, delta, 64), {}, 33, 33, 64, family);
            for (int row = 0; row < 33; ++row) {
                for (int col = 0; col < 33; ++col) {
                    int mirrored_col = 32 - col;
                    int mirrored_row = 32 - row;
                    CHECK(img.escape_iter[std::size_t(row) * 33 + std::size_t(col)] ==
                          img.escape_iter[std::size_t(mirrored_row) * 33 +
                                          std::size_t(mirrored_col)]);
                }
            }
        }
    }
}

TEST_CASE("member set shrinks as max_iter grows") {
    // same omega prefix: members at 2N iterations form a subset of members at N
    auto spec = spec_of(0x66, 0.5, 128);
    auto coarse = cj::render(spec, {}, 48, 48, 64, cj::Family::cubic);
    auto fine = cj::render(spec, {}, 48, 48, 128, cj::Family::cubic);
    for (int row = 0; row < 48; ++row) {
        for (int col = 0; col < 48; ++col) {
            if (fine.is_member(col, row)) {
                CHECK(coarse.is_member(col, row));
            }
        }
    }
    CHECK(fine.member_count() <= coarse.member_count());
}

TEST_CASE("escape radius is a sound divergence bound") {
    // once past sqrt(2+delta), the modulus at least doubles each step
    auto omega = cj::realize_omega(spec_of(0x42, 3.5, 64));
    double radius = cj::default_escape_radius(cj::Family::cubic, 3.5);
    std::complex<double> z{radius * 1.01, 0.0};
    double prev = std::abs(z);
    for (int i = 0; i < 16 && std::isfinite(prev); ++i) {
        auto c = omega[std::size_t(i)];
        z = z * (z * z + c);
        double mag = std::abs(z);
        if (!std::isfinite(mag)) {
            break;
        }
        CHECK(mag >= 2.0 * prev * 0.999);
        prev = mag;
    }
}

TEST_CASE("render validation and thread-count independence") {
    CHECK_THROWS_AS(cj::render(spec_of(0, 0.5, 4), {}, 1, 8, 4, cj::Family::cubic),
                    std::invalid_argument);
    CHECK_THROWS_AS(cj::render(spec_of(0, 0.5, 4), {}, 8, 8, 0, cj::Family::cubic),
                    std::invalid_argument);

    auto one = cj::render(spec_of(0x77, 3.5, 32), {}, 64, 64, 32, cj::Family::cubic, 1);
    auto four = cj::render(spec_of(0x77, 3.5, 32), {}, 64, 64, 32, cj::Family::cubic, 4);
    auto many = cj::render(spec_of(0x77, 3.5, 32), {}, 64, 64, 32, cj::Family::cubic, 13);
    CHECK(one.escape_iter == four.escape_iter);
    CHECK(one.escape_iter == many.escape_iter);
}

TEST_CASE("pgm output") {
    auto img = cj::render(spec_of(0x10, 0.0, 16), {}, 16, 8, 16, cj::Family::cubic);
    std::string pgm = cj::to_pgm(img);
    CHECK(pgm.rfind("P5\n16 8\n255\n", 0) == 0);
    CHECK(pgm.size() == std::string("P5\n16 8\n255\n").size() + 16 * 8);
    // members render white
    for (int row = 0; row < 8; ++row) {
        for (int col = 0; col < 16; ++col) {
            if (img.is_member(col, row)) {
                char v = pgm[std::string("P5\n16 8\n255\n").size() +
                             std::size_t(row) * 16 + std::size_t(col)];
                CHECK(static_cast<unsigned char>(v) == 255);
            }
        }
    }
}

TEST_CASE("stability distance") {
    Bytes seed_a(16, 0xaa);
    Bytes seed_b(16, 0xbb);

    // identical seeds give identical renders
    CHECK(cj::stability_distance(3.5, seed_a, seed_a, {}, 64, 64, 5) == 0.0);
    // delta 0 forces identical omegas regardless of seed
    CHECK(cj::stability_distance(0.0, seed_a, seed_b, {}, 64, 64, 5) == 0.0);

    double d = cj::stability_distance(3.5, seed_a, seed_b, {}, 64, 64, 5);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
}

TEST_CASE("stability dichotomy: stable regime varies less than chaotic") {
    double sum_stable = 0.0;
    double sum_chaotic = 0.0;
    const int pairs = 8;
    for (int t = 0; t < pairs; ++t) {
        Bytes sa(16, std::uint8_t(2 * t + 1));
        Bytes sb(16, std::uint8_t(2 * t + 2));
        sum_stable += cj::stability_distance(0.5, sa, sb, {}, 64, 64, 5);
        sum_chaotic += cj::stability_distance(3.5, sa, sb, {}, 64, 64, 5);
    }
    CHECK(sum_stable / pairs < sum_chaotic / pairs);
}
