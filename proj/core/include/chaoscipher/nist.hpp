#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chaoscipher/bit_sequence.hpp"

namespace chaoscipher::nist {

/// Outcome of one battery row. p_values holds the row's reported values
/// (one for most tests, two for serial). Component p-values of the
/// multi-part tests (per template / per walk state) live in params under
/// "p:" keys, alongside the observed/expected category counts used for
/// histogram plots. pass is the literal row flag:
/// applicable && min(p_values) >= alpha.
struct TestResult {
    std::string name;
    std::vector<double> p_values;
    double statistic = 0.0;
    bool pass = false;
    bool applicable = true;
    std::map<std::string, double> params;
    std::string note;
};

inline constexpr double kDefaultAlpha = 0.01;

TestResult monobit(const BitSequence& seq, double alpha = kDefaultAlpha);
TestResult block_frequency(const BitSequence& seq, int block_length = 128,
                           double alpha = kDefaultAlpha);
TestResult runs(const BitSequence& seq, double alpha = kDefaultAlpha);
TestResult longest_run(const BitSequence& seq, double alpha = kDefaultAlpha);

/// Binary matrix rank over GF(2), dim x dim matrices (32 for the battery;
/// smaller dims exist for reference-vector checks). Below 38 matrices the
/// result is flagged not-applicable but still computed, since the battery's
/// reference sequence length (6480 bits) only yields 6 matrices.
TestResult rank(const BitSequence& seq, int dim = 32, double alpha = kDefaultAlpha);

TestResult dft(const BitSequence& seq, double alpha = kDefaultAlpha);

/// All aperiodic (unbordered) templates of length m; reports the minimum
/// per-template p-value, full map under params["p:<template>"].
TestResult non_overlapping_template(const BitSequence& seq, int m = 9, int blocks = 8,
                                    double alpha = kDefaultAlpha);
TestResult overlapping_template(const BitSequence& seq, int m = 9, int block_length = 1032,
                                double alpha = kDefaultAlpha);

/// Maurer's universal test with automatic (L, Q) tier selection; extends the
/// standard's table down to L=2 so short sequences stay testable (flagged in
/// params/note when below the published tiers).
TestResult universal(const BitSequence& seq, double alpha = kDefaultAlpha);
/// Explicit-parameter variant used by the reference-vector suite.
TestResult universal_with(const BitSequence& seq, int L, int Q, double alpha = kDefaultAlpha);

TestResult linear_complexity(const BitSequence& seq, int block_length = 500,
                             double alpha = kDefaultAlpha);
TestResult serial(const BitSequence& seq, int m = 3, double alpha = kDefaultAlpha);
TestResult approximate_entropy(const BitSequence& seq, int m = 2, double alpha = kDefaultAlpha);

/// Forward and backward maximal-excursion tests, in that order.
std::pair<TestResult, TestResult> cumulative_sums(const BitSequence& seq,
                                                  double alpha = kDefaultAlpha);

TestResult random_excursions(const BitSequence& seq, double alpha = kDefaultAlpha);
TestResult random_excursions_variant(const BitSequence& seq, double alpha = kDefaultAlpha);

/// All fifteen tests with the reference-report parameters (rank 32x32,
/// serial m=3, defaults elsewhere), emitted in the reference row order;
/// cumulative sums contributes two rows, so the list has 16 entries.
std::vector<TestResult> run_battery(const BitSequence& seq, double alpha = kDefaultAlpha);

/// Row-level verdict: every component p-value (the "p:" params when present,
/// otherwise p_values) must clear the Sidak-corrected per-component threshold
/// 1-(1-alpha)^(1/k), keeping the row's family-wise error at alpha. Unlike
/// TestResult::pass this ignores sample-size applicability warnings; it is
/// the verdict the statistical acceptance checks are calibrated against.
bool row_passes(const TestResult& r, double alpha = kDefaultAlpha);

/// Per-component threshold used by row_passes.
double sidak_threshold(double alpha, std::size_t components);

/// Number of map applications needed by one dim x dim Gaussian elimination —
/// exposed for tests: GF(2) rank of a row-packed matrix.
int gf2_rank(std::vector<std::uint64_t> rows, int dim);

/// Length of the shortest LFSR generating `bits` (Berlekamp-Massey).
int berlekamp_massey_length(const std::vector<std::uint8_t>& bits);

/// Ascending list of aperiodic templates of length m, as '0'/'1' strings.
std::vector<std::string> aperiodic_templates(int m);

namespace detail {
/// |DFT(2e-1)| over the first floor(n/2) bins (n truncated to even), as used
/// by the spectral test; exposed so tests can diff it against a naive O(n^2)
/// transform.
std::vector<double> spectrum_magnitudes(const BitSequence& seq);
}  // namespace detail

/// Text table in the reference row order: name, p-value(s), Yes/No.
std::string text_report(const std::vector<TestResult>& results);

/// JSON array of {name, p_values, statistic, pass, applicable, params, note}.
std::string json_report(const std::vector<TestResult>& results);

}  // namespace chaoscipher::nist
