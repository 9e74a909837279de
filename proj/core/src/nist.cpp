#include "chaoscipher/nist.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "chaoscipher/special_functions.hpp"

namespace chaoscipher::nist {

namespace {

// C-style truncating division; the reference code computes the cumulative-sums
// summation bounds this way and the published worked example depends on it.
inline long tdiv(long a, long b) {
    return a / b;
}

TestResult make_result(std::string name, double alpha) {
    TestResult r;
    r.name = std::move(name);
    r.params["alpha"] = alpha;
    return r;
}

TestResult& finish(TestResult& r, double alpha) {
    double min_p = 1.0;
    for (double p : r.p_values) {
        min_p = std::min(min_p, p);
    }
    r.pass = r.applicable && !r.p_values.empty() && min_p >= alpha;
    return r;
}

TestResult not_applicable(TestResult r, std::string why) {
    r.applicable = false;
    r.pass = false;
    r.note = std::move(why);
    return r;
}

}  // namespace

double sidak_threshold(double alpha, std::size_t components) {
    if (components <= 1) {
        return alpha;
    }
    return 1.0 - std::pow(1.0 - alpha, 1.0 / double(components));
}

bool row_passes(const TestResult& r, double alpha) {
    std::vector<double> components;
    for (const auto& [key, value] : r.params) {
        if (key.rfind("p:", 0) == 0) {
            components.push_back(value);
        }
    }
    if (components.empty()) {
        components = r.p_values;
    }
    if (components.empty()) {
        return false;
    }
    double threshold = sidak_threshold(alpha, components.size());
    return std::all_of(components.begin(), components.end(),
                       [threshold](double p) { return p >= threshold; });
}

// ----------------------------------------------------------------- monobit

TestResult monobit(const BitSequence& seq, double alpha) {
    TestResult r = make_result("monobit", alpha);
    const std::size_t n = seq.size();
    if (n < 1) {
        return not_applicable(std::move(r), "empty sequence");
    }
    long long s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        s += seq[i] ? 1 : -1;
    }
    double s_obs = std::fabs(double(s)) / std::sqrt(double(n));
    r.statistic = s_obs;
    r.p_values = {erfc(s_obs / std::sqrt(2.0))};
    r.params["n"] = double(n);
    return finish(r, alpha);
}

// --------------------------------------------------------- block frequency

TestResult block_frequency(const BitSequence& seq, int block_length, double alpha) {
    TestResult r = make_result("block_frequency", alpha);
    const std::size_t n = seq.size();
    if (block_length < 2 || std::size_t(block_length) > n) {
        return not_applicable(std::move(r), "block length exceeds sequence");
    }
    const std::size_t N = n / std::size_t(block_length);
    double chi2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t ones = 0;
        for (int j = 0; j < block_length; ++j) {
            ones += seq[i * block_length + j];
        }
        double pi = double(ones) / block_length;
        chi2 += (pi - 0.5) * (pi - 0.5);
    }
    chi2 *= 4.0 * block_length;
    r.statistic = chi2;
    r.p_values = {igamc(double(N) / 2.0, chi2 / 2.0)};
    r.params["M"] = block_length;
    r.params["N"] = double(N);
    return finish(r, alpha);
}

// -------------------------------------------------------------------- runs

TestResult runs(const BitSequence& seq, double alpha) {
    TestResult r = make_result("runs", alpha);
    const std::size_t n = seq.size();
    if (n < 2) {
        return not_applicable(std::move(r), "sequence too short");
    }
    double pi = double(seq.count_ones()) / double(n);
    r.params["pi"] = pi;
    if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(double(n))) {
        return not_applicable(std::move(r), "monobit prerequisite failed");
    }
    std::size_t v = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        v += seq[k] != seq[k + 1];
    }
    double num = std::fabs(double(v) - 2.0 * n * pi * (1.0 - pi));
    double den = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
    r.statistic = double(v);
    r.p_values = {erfc(num / den)};
    return finish(r, alpha);
}

// ------------------------------------------------------------- longest run

TestResult longest_run(const BitSequence& seq, double alpha) {
    TestResult r = make_result("longest_run", alpha);
    const std::size_t n = seq.size();
    if (n < 128) {
        return not_applicable(std::move(r), "requires at least 128 bits");
    }
    int M;
    std::vector<int> vclasses;
    std::vector<double> pi;
    if (n < 6272) {
        M = 8;
        vclasses = {1, 2, 3};
        pi = {0.2148, 0.3672, 0.2305, 0.1875};
    } else if (n < 750000) {
        M = 128;
        vclasses = {4, 5, 6, 7, 8};
        pi = {0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124};
    } else {
        M = 10000;
        vclasses = {10, 11, 12, 13, 14, 15};
        pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
    }
    const int K = int(vclasses.size());
    const std::size_t N = n / std::size_t(M);
    std::vector<std::size_t> nu(K + 1, 0);
    for (std::size_t b = 0; b < N; ++b) {
        int longest = 0;
        int current = 0;
        for (int j = 0; j < M; ++j) {
            current = seq[b * M + j] ? current + 1 : 0;
            longest = std::max(longest, current);
        }
        int idx;
        if (longest <= vclasses.front()) {
            idx = 0;
        } else if (longest > vclasses.back()) {
            idx = K;
        } else {
            idx = int(std::find(vclasses.begin(), vclasses.end(), longest) - vclasses.begin());
        }
        ++nu[std::size_t(idx)];
    }
    double chi2 = 0.0;
    for (int i = 0; i <= K; ++i) {
        double expected = double(N) * pi[std::size_t(i)];
        chi2 += (double(nu[std::size_t(i)]) - expected) * (double(nu[std::size_t(i)]) - expected) / expected;
        r.params["cat_" + std::to_string(i) + "_observed"] = double(nu[std::size_t(i)]);
        r.params["cat_" + std::to_string(i) + "_expected"] = expected;
    }
    r.statistic = chi2;
    r.p_values = {igamc(double(K) / 2.0, chi2 / 2.0)};
    r.params["M"] = M;
    r.params["N"] = double(N);
    return finish(r, alpha);
}

// -------------------------------------------------------------------- rank

int gf2_rank(std::vector<std::uint64_t> rows, int dim) {
    int rank = 0;
    for (int col = 0; col < dim && rank < dim; ++col) {
        const std::uint64_t mask = std::uint64_t(1) << (dim - 1 - col);
        int pivot = -1;
        for (int i = rank; i < dim; ++i) {
            if (rows[std::size_t(i)] & mask) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) {
            continue;
        }
        std::swap(rows[std::size_t(rank)], rows[std::size_t(pivot)]);
        for (int i = 0; i < dim; ++i) {
            if (i != rank && (rows[std::size_t(i)] & mask)) {
                rows[std::size_t(i)] ^= rows[std::size_t(rank)];
            }
        }
        ++rank;
    }
    return rank;
}

namespace {

// Probability that a random dim x dim binary matrix has rank r.
double rank_probability(int r, int dim) {
    double product = 1.0;
    for (int i = 0; i < r; ++i) {
        double a = 1.0 - std::pow(2.0, double(i - dim));
        double b = 1.0 - std::pow(2.0, double(i - r));
        product *= a * a / b;
    }
    double exponent = double(r) * (2.0 * dim - r) - double(dim) * dim;
    return std::pow(2.0, exponent) * product;
}

}  // namespace

TestResult rank(const BitSequence& seq, int dim, double alpha) {
    TestResult r = make_result("rank", alpha);
    if (dim < 2 || dim > 64) {
        throw std::invalid_argument("rank: dim out of range");
    }
    const std::size_t bits_per_matrix = std::size_t(dim) * std::size_t(dim);
    const std::size_t N = seq.size() / bits_per_matrix;
    r.params["dim"] = dim;
    r.params["N"] = double(N);
    if (N == 0) {
        return not_applicable(std::move(r), "no complete matrix");
    }
    const double p_full = rank_probability(dim, dim);
    const double p_m1 = rank_probability(dim - 1, dim);
    const double p_rest = 1.0 - p_full - p_m1;
    std::size_t f_full = 0, f_m1 = 0, f_rest = 0;
    for (std::size_t k = 0; k < N; ++k) {
        std::vector<std::uint64_t> rows(std::size_t(dim), 0);
        for (int i = 0; i < dim; ++i) {
            std::uint64_t word = 0;
            for (int j = 0; j < dim; ++j) {
                word = (word << 1) | seq[k * bits_per_matrix + std::size_t(i) * dim + std::size_t(j)];
            }
            rows[std::size_t(i)] = word;
        }
        int rk = gf2_rank(std::move(rows), dim);
        if (rk == dim) {
            ++f_full;
        } else if (rk == dim - 1) {
            ++f_m1;
        } else {
            ++f_rest;
        }
    }
    auto term = [N](double observed, double p) {
        double expected = double(N) * p;
        return (observed - expected) * (observed - expected) / expected;
    };
    double chi2 = term(double(f_full), p_full) + term(double(f_m1), p_m1) + term(double(f_rest), p_rest);
    r.statistic = chi2;
    r.p_values = {igamc(1.0, chi2 / 2.0)};
    r.params["full_rank_observed"] = double(f_full);
    r.params["full_rank_expected"] = double(N) * p_full;
    r.params["rank_minus1_observed"] = double(f_m1);
    r.params["rank_minus1_expected"] = double(N) * p_m1;
    r.params["lower_rank_observed"] = double(f_rest);
    r.params["lower_rank_expected"] = double(N) * p_rest;
    finish(r, alpha);
    if (N < 38) {
        r.applicable = false;
        r.pass = false;
        r.note = "fewer than 38 matrices; reported with reduced confidence";
    }
    return r;
}

// --------------------------------------------------------------------- dft

namespace {

void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(a[i], a[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * std::numbers::pi / double(len) * (inverse ? 1.0 : -1.0);
        std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::complex<double> u = a[i + j];
                std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        for (auto& x : a) {
            x /= double(n);
        }
    }
}

// Bluestein chirp-z: forward DFT of arbitrary length via a power-of-two
// convolution. Exact chirp angles use j^2 mod 2n to stay well inside the
// double mantissa.
std::vector<std::complex<double>> dft_forward(const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    if (n == 0) {
        return {};
    }
    if ((n & (n - 1)) == 0) {
        auto a = x;
        fft_pow2(a, false);
        return a;
    }
    std::size_t m = 1;
    while (m < 2 * n - 1) {
        m <<= 1;
    }
    auto chirp = [n](std::size_t j) {
        std::uint64_t q = (std::uint64_t(j) * j) % (2 * std::uint64_t(n));
        double ang = std::numbers::pi * double(q) / double(n);
        return std::complex<double>(std::cos(ang), -std::sin(ang));
    };
    std::vector<std::complex<double>> a(m, {0.0, 0.0});
    std::vector<std::complex<double>> b(m, {0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) {
        a[j] = x[j] * chirp(j);
        b[j] = std::conj(chirp(j));
        if (j != 0) {
            b[m - j] = b[j];
        }
    }
    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t i = 0; i < m; ++i) {
        a[i] *= b[i];
    }
    fft_pow2(a, true);
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = a[k] * chirp(k);
    }
    return out;
}

}  // namespace

namespace detail {

std::vector<double> spectrum_magnitudes(const BitSequence& seq) {
    const std::size_t n = seq.size() & ~std::size_t(1);
    std::vector<std::complex<double>> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = {seq[i] ? 1.0 : -1.0, 0.0};
    }
    auto spectrum = dft_forward(x);
    std::vector<double> mags(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        mags[k] = std::abs(spectrum[k]);
    }
    return mags;
}

}  // namespace detail

TestResult dft(const BitSequence& seq, double alpha) {
    TestResult r = make_result("dft", alpha);
    const std::size_t n = seq.size() & ~std::size_t(1);
    if (n < 2) {
        return not_applicable(std::move(r), "sequence too short");
    }
    auto mags = detail::spectrum_magnitudes(seq);
    const double threshold = std::sqrt(std::log(1.0 / 0.05) * double(n));
    std::size_t below = 0;
    for (double mag : mags) {
        below += mag < threshold;
    }
    const double n0 = 0.95 * double(n) / 2.0;
    const double d = (double(below) - n0) / std::sqrt(double(n) * 0.95 * 0.05 / 4.0);
    r.statistic = d;
    r.p_values = {erfc(std::fabs(d) / std::sqrt(2.0))};
    r.params["n"] = double(n);
    r.params["threshold"] = threshold;
    r.params["N0"] = n0;
    r.params["N1"] = double(below);
    return finish(r, alpha);
}

// --------------------------------------------------- non-overlapping templates

std::vector<std::string> aperiodic_templates(int m) {
    if (m < 2 || m > 16) {
        throw std::invalid_argument("aperiodic_templates: m out of range");
    }
    std::vector<std::string> out;
    for (std::uint32_t v = 0; v < (1u << m); ++v) {
        bool bordered = false;
        for (int k = 1; k < m && !bordered; ++k) {
            std::uint32_t prefix = v >> k;
            std::uint32_t suffix = v & ((1u << (m - k)) - 1u);
            bordered = prefix == suffix;
        }
        if (!bordered) {
            std::string s(std::size_t(m), '0');
            for (int i = 0; i < m; ++i) {
                if (v & (1u << (m - 1 - i))) {
                    s[std::size_t(i)] = '1';
                }
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

TestResult non_overlapping_template(const BitSequence& seq, int m, int blocks, double alpha) {
    TestResult r = make_result("non_overlapping_template", alpha);
    const std::size_t n = seq.size();
    if (m < 2 || n < std::size_t(blocks) * std::size_t(m)) {
        return not_applicable(std::move(r), "sequence too short for template length");
    }
    const std::size_t M = n / std::size_t(blocks);
    const double mu = (double(M) - m + 1) / std::pow(2.0, m);
    const double sigma2 = double(M) * (1.0 / std::pow(2.0, m) - (2.0 * m - 1.0) / std::pow(2.0, 2.0 * m));

    // Integer value of each m-bit window, per block, computed once.
    std::vector<std::vector<std::uint32_t>> windows(static_cast<std::size_t>(blocks));
    const std::uint32_t mask = (1u << m) - 1u;
    for (int b = 0; b < blocks; ++b) {
        auto& w = windows[std::size_t(b)];
        w.resize(M - std::size_t(m) + 1);
        const std::size_t base = std::size_t(b) * M;
        std::uint32_t value = 0;
        for (int j = 0; j < m; ++j) {
            value = (value << 1) | seq[base + std::size_t(j)];
        }
        w[0] = value;
        for (std::size_t i = 1; i < w.size(); ++i) {
            value = ((value << 1) | seq[base + i + std::size_t(m) - 1]) & mask;
            w[i] = value;
        }
    }

    double min_p = 1.0;
    double min_chi2 = 0.0;
    std::string min_template;
    const auto templates = aperiodic_templates(m);
    for (const std::string& tpl : templates) {
        std::uint32_t tv = 0;
        for (char c : tpl) {
            tv = (tv << 1) | (c == '1');
        }
        double chi2 = 0.0;
        for (int b = 0; b < blocks; ++b) {
            const auto& w = windows[std::size_t(b)];
            std::size_t count = 0;
            for (std::size_t i = 0; i < w.size();) {
                if (w[i] == tv) {
                    ++count;
                    i += std::size_t(m);
                } else {
                    ++i;
                }
            }
            chi2 += (double(count) - mu) * (double(count) - mu) / sigma2;
        }
        double p = igamc(double(blocks) / 2.0, chi2 / 2.0);
        r.params["p:" + tpl] = p;
        if (p < min_p) {
            min_p = p;
            min_chi2 = chi2;
            min_template = tpl;
        }
    }
    r.statistic = min_chi2;
    r.p_values = {min_p};
    r.params["m"] = m;
    r.params["blocks"] = blocks;
    r.params["M"] = double(M);
    r.params["mu"] = mu;
    r.params["sigma2"] = sigma2;
    r.note = "min p over " + std::to_string(templates.size()) +
             " aperiodic templates (worst template " + min_template + ")";
    return finish(r, alpha);
}

// ------------------------------------------------------ overlapping template

namespace {

// Compound-Poisson category probabilities for the overlapping test.
std::vector<double> overlapping_pi(int K, double eta) {
    std::vector<double> pi(std::size_t(K) + 1, 0.0);
    pi[0] = std::exp(-eta);
    double total = pi[0];
    for (int u = 1; u < K; ++u) {
        double sum = 0.0;
        for (int l = 1; l <= u; ++l) {
            sum += std::exp(-eta - u * std::log(2.0) + l * std::log(eta) - std::lgamma(l + 1) +
                            std::lgamma(u) - std::lgamma(l) - std::lgamma(u - l + 1));
        }
        pi[std::size_t(u)] = sum;
        total += sum;
    }
    pi[std::size_t(K)] = 1.0 - total;
    return pi;
}

}  // namespace

TestResult overlapping_template(const BitSequence& seq, int m, int block_length, double alpha) {
    TestResult r = make_result("overlapping_template", alpha);
    const std::size_t n = seq.size();
    constexpr int K = 5;
    if (m < 2 || block_length < m || n < std::size_t(block_length)) {
        return not_applicable(std::move(r), "sequence too short for block length");
    }
    const std::size_t N = n / std::size_t(block_length);
    std::vector<double> pi;
    if (m == 9 && block_length == 1032) {
        // Published constants for the reference configuration (exact analysis
        // of the K=5, M=1032 case); the generic formula below is the
        // compound-Poisson approximation used for other configurations.
        pi = {0.364091, 0.185659, 0.139381, 0.100571, 0.070432, 0.139865};
    } else {
        const double lambda = (double(block_length) - m + 1) / std::pow(2.0, m);
        pi = overlapping_pi(K, lambda / 2.0);
    }
    std::vector<std::size_t> nu(K + 1, 0);
    for (std::size_t b = 0; b < N; ++b) {
        const std::size_t base = b * std::size_t(block_length);
        std::size_t count = 0;
        for (std::size_t i = 0; i + std::size_t(m) <= std::size_t(block_length); ++i) {
            bool match = true;
            for (int j = 0; j < m && match; ++j) {
                match = seq[base + i + std::size_t(j)] == 1;
            }
            count += match;
        }
        nu[std::min<std::size_t>(count, K)] += 1;
    }
    double chi2 = 0.0;
    for (int i = 0; i <= K; ++i) {
        double expected = double(N) * pi[std::size_t(i)];
        chi2 += (double(nu[std::size_t(i)]) - expected) * (double(nu[std::size_t(i)]) - expected) / expected;
        r.params["cat_" + std::to_string(i) + "_observed"] = double(nu[std::size_t(i)]);
        r.params["cat_" + std::to_string(i) + "_expected"] = expected;
    }
    r.statistic = chi2;
    r.p_values = {igamc(double(K) / 2.0, chi2 / 2.0)};
    r.params["m"] = m;
    r.params["M"] = block_length;
    r.params["N"] = double(N);
    if (n < 1000000) {
        r.note = "below the recommended 10^6 bits; reduced power";
    }
    return finish(r, alpha);
}

// --------------------------------------------------------------- universal

namespace {

constexpr double kUniversalExpected[17] = {
    0.0,       0.7326495, 1.5374383, 2.4016068, 3.3112247, 4.2534266,
    5.2177052, 6.1962507, 7.1836656, 8.1764248, 9.1723243, 10.170032,
    11.168765, 12.168070, 13.167693, 14.167488, 15.167379,
};
constexpr double kUniversalVariance[17] = {
    0.0,   0.690, 1.338, 1.901, 2.358, 2.705, 2.954, 3.125, 3.238,
    3.311, 3.356, 3.384, 3.401, 3.410, 3.416, 3.419, 3.421,
};

// Tier thresholds follow n >= 1010 * 2^L * L; the published table starts at
// L=6 and the same formula extends it downward.
int universal_tier(std::size_t n) {
    int L = 2;
    for (int candidate = 3; candidate <= 16; ++candidate) {
        std::uint64_t need = 1010ull * (1ull << candidate) * std::uint64_t(candidate);
        if (n >= need) {
            L = candidate;
        }
    }
    return L;
}

}  // namespace

TestResult universal_with(const BitSequence& seq, int L, int Q, double alpha) {
    TestResult r = make_result("universal", alpha);
    if (L < 1 || L > 16 || Q < 1) {
        throw std::invalid_argument("universal: L in [1,16], Q >= 1 required");
    }
    const std::size_t n = seq.size();
    const long K = long(n) / L - Q;
    r.params["L"] = L;
    r.params["Q"] = Q;
    r.params["K"] = double(K);
    if (K < 1) {
        return not_applicable(std::move(r), "sequence too short for chosen (L, Q)");
    }
    std::vector<long> table(std::size_t(1) << L, 0);
    auto block_value = [&](long i) {  // 1-based block index
        std::uint32_t v = 0;
        const std::size_t base = std::size_t(i - 1) * std::size_t(L);
        for (int j = 0; j < L; ++j) {
            v = (v << 1) | seq[base + std::size_t(j)];
        }
        return v;
    };
    for (long i = 1; i <= Q; ++i) {
        table[block_value(i)] = i;
    }
    double sum = 0.0;
    for (long i = Q + 1; i <= Q + K; ++i) {
        std::uint32_t v = block_value(i);
        sum += std::log2(double(i - table[v]));
        table[v] = i;
    }
    const double fn = sum / double(K);
    const double c = 0.7 - 0.8 / L + (4.0 + 32.0 / L) * std::pow(double(K), -3.0 / L) / 15.0;
    const double sigma = c * std::sqrt(kUniversalVariance[L] / double(K));
    r.statistic = fn;
    r.p_values = {erfc(std::fabs(fn - kUniversalExpected[L]) / (std::sqrt(2.0) * sigma))};
    r.params["fn"] = fn;
    r.params["sigma"] = sigma;
    r.params["expected"] = kUniversalExpected[L];
    return finish(r, alpha);
}

TestResult universal(const BitSequence& seq, double alpha) {
    const std::size_t n = seq.size();
    const int L = universal_tier(n);
    const int Q = 10 * (1 << L);
    if (long(n) / L - Q < 1) {
        TestResult r = make_result("universal", alpha);
        r.params["L"] = L;
        r.params["Q"] = Q;
        return not_applicable(std::move(r), "sequence too short for L=2 tier");
    }
    TestResult r = universal_with(seq, L, Q, alpha);
    if (n < 1010ull * 4 * 2) {
        r.note = "below the published tier table; L=2 extension in use";
        r.params["below_table"] = 1.0;
    } else if (L < 6) {
        r.note = "tier table extended below L=6";
        r.params["below_table"] = 1.0;
    }
    return r;
}

// -------------------------------------------------------- linear complexity

int berlekamp_massey_length(const std::vector<std::uint8_t>& bits) {
    const int n = int(bits.size());
    std::vector<std::uint8_t> c(std::size_t(n) + 1, 0), b(std::size_t(n) + 1, 0);
    c[0] = b[0] = 1;
    int L = 0;
    int m = -1;
    for (int i = 0; i < n; ++i) {
        int d = bits[std::size_t(i)];
        for (int j = 1; j <= L; ++j) {
            d ^= c[std::size_t(j)] & bits[std::size_t(i - j)];
        }
        if (d == 1) {
            std::vector<std::uint8_t> t = c;
            for (int j = 0; j + (i - m) <= n; ++j) {
                c[std::size_t(j + (i - m))] ^= b[std::size_t(j)];
            }
            if (2 * L <= i) {
                L = i + 1 - L;
                m = i;
                b = t;
            }
        }
    }
    return L;
}

TestResult linear_complexity(const BitSequence& seq, int block_length, double alpha) {
    TestResult r = make_result("linear_complexity", alpha);
    const std::size_t n = seq.size();
    if (block_length < 4 || n < std::size_t(block_length)) {
        return not_applicable(std::move(r), "sequence shorter than one block");
    }
    const std::size_t N = n / std::size_t(block_length);
    const double M = double(block_length);
    const double sign = (block_length % 2 == 0) ? 1.0 : -1.0;
    const double mu = M / 2.0 + (9.0 - sign) / 36.0 - (M / 3.0 + 2.0 / 9.0) / std::pow(2.0, M);
    static const double pi[7] = {0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833};
    std::vector<std::size_t> nu(7, 0);
    std::vector<std::uint8_t> block(static_cast<std::size_t>(block_length));
    for (std::size_t bidx = 0; bidx < N; ++bidx) {
        for (int j = 0; j < block_length; ++j) {
            block[std::size_t(j)] = seq[bidx * std::size_t(block_length) + std::size_t(j)];
        }
        const int L = berlekamp_massey_length(block);
        const double t = sign * (double(L) - mu) + 2.0 / 9.0;
        int idx;
        if (t <= -2.5) idx = 0;
        else if (t <= -1.5) idx = 1;
        else if (t <= -0.5) idx = 2;
        else if (t <= 0.5) idx = 3;
        else if (t <= 1.5) idx = 4;
        else if (t <= 2.5) idx = 5;
        else idx = 6;
        ++nu[std::size_t(idx)];
    }
    double chi2 = 0.0;
    for (int i = 0; i < 7; ++i) {
        double expected = double(N) * pi[i];
        chi2 += (double(nu[std::size_t(i)]) - expected) * (double(nu[std::size_t(i)]) - expected) / expected;
        r.params["cat_" + std::to_string(i) + "_observed"] = double(nu[std::size_t(i)]);
        r.params["cat_" + std::to_string(i) + "_expected"] = expected;
    }
    r.statistic = chi2;
    r.p_values = {igamc(3.0, chi2 / 2.0)};
    r.params["M"] = M;
    r.params["N"] = double(N);
    if (N < 200) {
        r.note = "fewer than 200 blocks; reduced power";
    }
    return finish(r, alpha);
}

// ------------------------------------------------------------------ serial

namespace {

double psi_sq(const BitSequence& seq, int m) {
    if (m <= 0) {
        return 0.0;
    }
    const std::size_t n = seq.size();
    std::vector<std::size_t> counts(std::size_t(1) << m, 0);
    const std::uint32_t mask = (1u << m) - 1u;
    std::uint32_t value = 0;
    for (int j = 0; j < m; ++j) {
        value = (value << 1) | seq[std::size_t(j) % n];
    }
    ++counts[value];
    for (std::size_t i = 1; i < n; ++i) {
        value = ((value << 1) | seq[(i + std::size_t(m) - 1) % n]) & mask;
        ++counts[value];
    }
    double sum = 0.0;
    for (std::size_t c : counts) {
        sum += double(c) * double(c);
    }
    return std::pow(2.0, m) / double(n) * sum - double(n);
}

}  // namespace

TestResult serial(const BitSequence& seq, int m, double alpha) {
    TestResult r = make_result("serial", alpha);
    const std::size_t n = seq.size();
    if (m < 2 || m > 16 || std::size_t(m) > n) {
        return not_applicable(std::move(r), "m too large for sequence length");
    }
    if (double(m) >= std::log2(double(n)) - 2.0) {
        r.note = "m above the recommended bound; reduced power";
    }
    const double psi_m = psi_sq(seq, m);
    const double psi_m1 = psi_sq(seq, m - 1);
    const double psi_m2 = psi_sq(seq, m - 2);
    const double d1 = psi_m - psi_m1;
    const double d2 = psi_m - 2.0 * psi_m1 + psi_m2;
    r.statistic = d1;
    r.p_values = {igamc(std::pow(2.0, m - 2), d1 / 2.0), igamc(std::pow(2.0, m - 3), d2 / 2.0)};
    r.params["m"] = m;
    r.params["del1"] = d1;
    r.params["del2"] = d2;
    return finish(r, alpha);
}

// ----------------------------------------------------- approximate entropy

TestResult approximate_entropy(const BitSequence& seq, int m, double alpha) {
    TestResult r = make_result("approximate_entropy", alpha);
    const std::size_t n = seq.size();
    if (m < 1 || m > 15 || std::size_t(m) + 1 > n) {
        return not_applicable(std::move(r), "m too large for sequence length");
    }
    auto phi = [&seq, n](int k) {
        if (k == 0) {
            return 0.0;
        }
        std::vector<std::size_t> counts(std::size_t(1) << k, 0);
        const std::uint32_t mask = (1u << k) - 1u;
        std::uint32_t value = 0;
        for (int j = 0; j < k; ++j) {
            value = (value << 1) | seq[std::size_t(j) % n];
        }
        ++counts[value];
        for (std::size_t i = 1; i < n; ++i) {
            value = ((value << 1) | seq[(i + std::size_t(k) - 1) % n]) & mask;
            ++counts[value];
        }
        double sum = 0.0;
        for (std::size_t c : counts) {
            if (c > 0) {
                double f = double(c) / double(n);
                sum += f * std::log(f);
            }
        }
        return sum;
    };
    const double apen = phi(m) - phi(m + 1);
    const double chi2 = 2.0 * double(n) * (std::log(2.0) - apen);
    r.statistic = chi2;
    r.p_values = {igamc(std::pow(2.0, m - 1), chi2 / 2.0)};
    r.params["m"] = m;
    r.params["apen"] = apen;
    if (double(m) >= std::log2(double(n)) - 5.0) {
        r.note = "m above the recommended bound; reduced power";
    }
    return finish(r, alpha);
}

// ----------------------------------------------------------- cumulative sums

namespace {

TestResult cusum_one(const BitSequence& seq, bool backward, double alpha) {
    TestResult r = make_result(backward ? "cumulative_sums_backward" : "cumulative_sums_forward",
                               alpha);
    const long n = long(seq.size());
    if (n < 2) {
        return not_applicable(std::move(r), "sequence too short");
    }
    long s = 0;
    long z = 0;
    for (long i = 0; i < n; ++i) {
        std::size_t idx = backward ? std::size_t(n - 1 - i) : std::size_t(i);
        s += seq[idx] ? 1 : -1;
        z = std::max(z, std::labs(s));
    }
    r.statistic = double(z);
    r.params["z"] = double(z);
    if (z == 0) {
        r.p_values = {1.0};
        return finish(r, alpha);
    }
    const double sq = std::sqrt(double(n));
    double sum1 = 0.0;
    for (long k = tdiv(tdiv(-n, z) + 1, 4); k <= tdiv(tdiv(n, z) - 1, 4); ++k) {
        sum1 += normal_cdf(double(4 * k + 1) * double(z) / sq) -
                normal_cdf(double(4 * k - 1) * double(z) / sq);
    }
    double sum2 = 0.0;
    for (long k = tdiv(tdiv(-n, z) - 3, 4); k <= tdiv(tdiv(n, z) - 1, 4); ++k) {
        sum2 += normal_cdf(double(4 * k + 3) * double(z) / sq) -
                normal_cdf(double(4 * k + 1) * double(z) / sq);
    }
    r.p_values = {1.0 - sum1 + sum2};
    return finish(r, alpha);
}

}  // namespace

std::pair<TestResult, TestResult> cumulative_sums(const BitSequence& seq, double alpha) {
    return {cusum_one(seq, false, alpha), cusum_one(seq, true, alpha)};
}

// --------------------------------------------------------- random excursions

namespace {

// Zero-to-zero cycles of the +-1 partial-sum walk, with a final zero appended
// when the walk ends off-origin.
std::vector<std::vector<long>> walk_cycles(const BitSequence& seq) {
    std::vector<std::vector<long>> cycles;
    std::vector<long> current;
    long s = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        s += seq[i] ? 1 : -1;
        current.push_back(s);
        if (s == 0) {
            cycles.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        current.push_back(0);
        cycles.push_back(std::move(current));
    }
    return cycles;
}

}  // namespace

TestResult random_excursions(const BitSequence& seq, double alpha) {
    TestResult r = make_result("random_excursions", alpha);
    if (seq.size() < 2) {
        return not_applicable(std::move(r), "sequence too short");
    }
    const auto cycles = walk_cycles(seq);
    const std::size_t J = cycles.size();
    r.params["J"] = double(J);
    if (J < 1) {
        return not_applicable(std::move(r), "no complete cycle");
    }
    static const int states[8] = {-4, -3, -2, -1, 1, 2, 3, 4};
    double min_p = 1.0;
    double min_chi2 = 0.0;
    for (int x : states) {
        const double ax = std::abs(x);
        double pi[6];
        pi[0] = 1.0 - 1.0 / (2.0 * ax);
        for (int k = 1; k <= 4; ++k) {
            pi[k] = (1.0 / (4.0 * ax * ax)) * std::pow(pi[0], k - 1);
        }
        pi[5] = (1.0 / (2.0 * ax)) * std::pow(pi[0], 4);
        std::size_t nu[6] = {0, 0, 0, 0, 0, 0};
        for (const auto& cycle : cycles) {
            std::size_t visits = 0;
            for (long v : cycle) {
                visits += v == x;
            }
            ++nu[std::min<std::size_t>(visits, 5)];
        }
        double chi2 = 0.0;
        for (int k = 0; k < 6; ++k) {
            double expected = double(J) * pi[k];
            chi2 += (double(nu[k]) - expected) * (double(nu[k]) - expected) / expected;
        }
        double p = igamc(2.5, chi2 / 2.0);
        r.params["p:state_" + std::to_string(x)] = p;
        if (p < min_p) {
            min_p = p;
            min_chi2 = chi2;
        }
    }
    r.statistic = min_chi2;
    r.p_values = {min_p};
    finish(r, alpha);
    if (J < 500) {
        r.applicable = false;
        r.pass = false;
        r.note = "J=" + std::to_string(J) + " cycles (< 500); reported with low-cycle warning";
    }
    return r;
}

TestResult random_excursions_variant(const BitSequence& seq, double alpha) {
    TestResult r = make_result("random_excursions_variant", alpha);
    if (seq.size() < 2) {
        return not_applicable(std::move(r), "sequence too short");
    }
    const auto cycles = walk_cycles(seq);
    const std::size_t J = cycles.size();
    r.params["J"] = double(J);
    if (J < 1) {
        return not_applicable(std::move(r), "no complete cycle");
    }
    double min_p = 1.0;
    double min_stat = 0.0;
    for (int x = -9; x <= 9; ++x) {
        if (x == 0) {
            continue;
        }
        std::size_t xi = 0;
        for (const auto& cycle : cycles) {
            for (long v : cycle) {
                xi += v == x;
            }
        }
        double stat = std::fabs(double(xi) - double(J)) /
                      std::sqrt(2.0 * double(J) * (4.0 * std::abs(x) - 2.0));
        double p = erfc(stat);
        r.params["p:state_" + std::to_string(x)] = p;
        if (p < min_p) {
            min_p = p;
            min_stat = stat;
        }
    }
    r.statistic = min_stat;
    r.p_values = {min_p};
    finish(r, alpha);
    if (J < 500) {
        r.applicable = false;
        r.pass = false;
        r.note = "J=" + std::to_string(J) + " cycles (< 500); reported with low-cycle warning";
    }
    return r;
}

// ----------------------------------------------------------------- battery

std::vector<TestResult> run_battery(const BitSequence& seq, double alpha) {
    std::vector<TestResult> out;
    out.reserve(16);
    out.push_back(monobit(seq, alpha));
    out.push_back(block_frequency(seq, 128, alpha));
    auto [fwd, bwd] = cumulative_sums(seq, alpha);
    out.push_back(std::move(fwd));
    out.push_back(std::move(bwd));
    out.push_back(dft(seq, alpha));
    out.push_back(approximate_entropy(seq, 2, alpha));
    out.push_back(linear_complexity(seq, 500, alpha));
    out.push_back(longest_run(seq, alpha));
    out.push_back(non_overlapping_template(seq, 9, 8, alpha));
    out.push_back(overlapping_template(seq, 9, 1032, alpha));
    out.push_back(random_excursions(seq, alpha));
    out.push_back(random_excursions_variant(seq, alpha));
    out.push_back(rank(seq, 32, alpha));
    out.push_back(runs(seq, alpha));
    out.push_back(serial(seq, 3, alpha));
    out.push_back(universal(seq, alpha));
    return out;
}

// ----------------------------------------------------------------- reports

namespace {

std::string display_name(const std::string& id) {
    if (id == "monobit") return "Frequency (Monobit)";
    if (id == "block_frequency") return "Block Frequency";
    if (id == "cumulative_sums_forward") return "Cumulative Sums (fwd)";
    if (id == "cumulative_sums_backward") return "Cumulative Sums (bwd)";
    if (id == "dft") return "FFT";
    if (id == "approximate_entropy") return "Approximate Entropy";
    if (id == "linear_complexity") return "Linear Complexity";
    if (id == "longest_run") return "Longest Run of Ones";
    if (id == "non_overlapping_template") return "Non-overlapping Templates";
    if (id == "overlapping_template") return "Overlapping Templates";
    if (id == "random_excursions") return "Random Excursions";
    if (id == "random_excursions_variant") return "Random Excursions Variant";
    if (id == "rank") return "Rank (32x32)";
    if (id == "runs") return "Runs";
    if (id == "serial") return "Serial (m=3)";
    if (id == "universal") return "Universal (Maurer)";
    return id;
}

}  // namespace

std::string text_report(const std::vector<TestResult>& results) {
    std::ostringstream os;
    os << "Test                             p-value            Pass\n";
    os << "---------------------------------------------------------\n";
    for (const auto& r : results) {
        double alpha = kDefaultAlpha;
        if (auto it = r.params.find("alpha"); it != r.params.end()) {
            alpha = it->second;
        }
        std::ostringstream pv, verdict;
        if (r.p_values.empty()) {
            pv << "-";
            verdict << "n/a";
        } else {
            for (std::size_t i = 0; i < r.p_values.size(); ++i) {
                if (i) {
                    pv << "/";
                    verdict << "/";
                }
                pv.setf(std::ios::fixed);
                pv.precision(4);
                pv << r.p_values[i];
                verdict << (r.p_values[i] >= alpha ? "Yes" : "No");
            }
        }
        os.setf(std::ios::left, std::ios::adjustfield);
        os.width(33);
        os << display_name(r.name);
        os.width(19);
        os << pv.str();
        os << verdict.str();
        if (!r.applicable) {
            os << "  [" << r.note << "]";
        }
        os << "\n";
    }
    return os.str();
}

std::string json_report(const std::vector<TestResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) {
        nlohmann::json item;
        item["name"] = r.name;
        item["p_values"] = r.p_values;
        item["statistic"] = r.statistic;
        item["pass"] = r.pass;
        item["applicable"] = r.applicable;
        item["params"] = r.params;
        item["note"] = r.note;
        arr.push_back(std::move(item));
    }
    return arr.dump(1);
}

}  // namespace chaoscipher::nist
