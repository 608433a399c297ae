#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace reqnet::stats {

struct Sample {
    std::vector<double> values;
    std::string label;
};

struct Descriptive {
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double std_dev = 0.0;  // n-1 denominator
    /// Set when n < 2 and the standard deviation is reported as 0.
    bool degenerate = false;
};

/// Throws DomainError on an empty sample.
Descriptive descriptive(std::span<const double> values);

/// Result of a hypothesis test. Keys of `extras` per test:
///   shapiro_wilk:   n
///   kruskal_wallis: h_uncorrected, tie_correction, df, n, p_exact (N <= 10 only)
///   mann_whitney:   u_a, u_b, z, z_uncorrected, mean_rank_a, mean_rank_b,
///                   tie_correction, p_exact (n_a + n_b <= 12 only)
struct TestResult {
    std::string statistic_name;
    double statistic = 0.0;
    double p_value = 1.0;  // two-sided where a direction exists
    std::map<std::string, double> extras;
    /// Kruskal-Wallis only: mean rank per group, in input order.
    std::vector<double> mean_ranks;
};

/// Ranks 1..n with tied values sharing the average of their positions.
std::vector<double> midranks(std::span<const double> values);
/// sum over tie groups of (t^3 - t).
double tie_sum(std::span<const double> values);

/// Royston's AS R94 approximation; 3 <= n <= 5000. Throws DomainError for
/// n out of range and DegenerateSampleError for a constant sample.
TestResult shapiro_wilk(std::span<const double> values);

/// Tie-corrected H with a chi-square(k-1) p value. Every group must be
/// non-empty and N >= k + 1. All-identical data gives H = 0, p = 1.
TestResult kruskal_wallis(std::span<const Sample> groups);

/// Normal approximation with tie-corrected variance and continuity
/// correction; U = min(U_a, U_b).
TestResult mann_whitney(std::span<const double> a, std::span<const double> b);

/// Exact permutation p for Kruskal-Wallis: share of all distinct group
/// relabelings whose H is at least the observed H. Cost grows as the
/// multinomial N!/prod(n_i!); the tests only call it for N <= 10.
double kruskal_wallis_exact_p(std::span<const Sample> groups);

/// Exact two-sided p for Mann-Whitney: share of the C(N, n_a) splits with
/// |U_a - n_a n_b / 2| at least the observed distance. Handles ties.
double mann_whitney_exact_p(std::span<const double> a, std::span<const double> b);

/// Upper tail of chi-square(df) at x >= 0.
double chi_square_survival(double x, int df);

/// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

double normal_cdf(double z);
/// Standard normal quantile (Wichura AS241), 0 < p < 1.
double normal_quantile(double p);

struct ReliabilityInput {
    std::size_t n1 = 0;  // coder 1 decisions
    std::size_t n2 = 0;  // coder 2 decisions
    std::size_t m = 0;   // agreed decisions
};

/// Holsti's coefficient 2m / (n1 + n2).
double holsti(const ReliabilityInput& r);

}  // namespace reqnet::stats
