// Shapiro-Wilk W with Royston's (1995) coefficient and p-value
// approximations, following the structure of algorithm AS R94.

#include <algorithm>
#include <cmath>

#include "reqnet/error.hpp"
#include "reqnet/stats.hpp"

namespace reqnet::stats {

namespace {

/// c[0] + c[1] x + c[2] x^2 + ...
double poly(std::span<const double> c, double x) {
    double r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

constexpr double kC1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
constexpr double kC2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
constexpr double kC3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
constexpr double kC4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr double kC5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr double kC6[] = {-0.4803, -0.082676, 0.0030302};
constexpr double kG[] = {-2.273, 0.459};

/// Upper-half coefficients a[0..n/2) for the ordered sample.
std::vector<double> coefficients(std::size_t n) {
    const std::size_t half = n / 2;
    std::vector<double> a(half);
    if (n == 3) {
        a[0] = std::sqrt(0.5);
        return a;
    }
    const double an = static_cast<double>(n);
    std::vector<double> m(half);
    double summ2 = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
        summ2 += m[i] * m[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(kC1, rsn) - m[0] / ssumm2;

    std::size_t first_scaled;
    double fac;
    if (n > 5) {
        first_scaled = 2;
        const double a2 = -m[1] / ssumm2 + poly(kC2, rsn);
        fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                        (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
        a[1] = a2;
    } else {
        first_scaled = 1;
        fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
    }
    a[0] = a1;
    for (std::size_t i = first_scaled; i < half; ++i) a[i] = -m[i] / fac;
    return a;
}

}  // namespace

TestResult shapiro_wilk(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 3 || n > 5000) throw DomainError("Shapiro-Wilk needs 3 <= n <= 5000");
    std::vector<double> x(values.begin(), values.end());
    std::sort(x.begin(), x.end());
    const double range = x.back() - x.front();
    if (!(range > 1e-19 * std::max(1.0, std::fabs(x.front()))))
        throw DegenerateSampleError("Shapiro-Wilk is undefined for a constant sample");

    const auto a = coefficients(n);

    // W = (sum a_i x_(i))^2 / (sum a_i^2 * sum (x - mean)^2), on range-scaled data.
    double mean = 0.0;
    for (double v : x) mean += v / range;
    mean /= static_cast<double>(n);
    double ssa = 0.0, ssx = 0.0, sax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = n - 1 - i;
        double asa = 0.0;
        if (i < j) asa = -a[i];
        else if (i > j) asa = a[j];
        const double xsx = x[i] / range - mean;
        ssa += asa * asa;
        ssx += xsx * xsx;
        sax += asa * xsx;
    }
    const double ssassx = std::sqrt(ssa * ssx);
    const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    const double w = 1.0 - w1;

    TestResult r;
    r.statistic_name = "W";
    r.statistic = w;
    r.extras["n"] = static_cast<double>(n);

    if (n == 3) {
        constexpr double pi6 = 1.90985931710274;   // 6 / pi
        constexpr double stqr = 1.04719755119660;  // pi / 3
        r.p_value = std::max(0.0, pi6 * (std::asin(std::sqrt(w)) - stqr));
        return r;
    }

    const double an = static_cast<double>(n);
    double y = std::log(w1);
    double mu, sigma;
    if (n <= 11) {
        const double gamma = poly(kG, an);
        if (y >= gamma) {
            r.p_value = 1e-99;
            return r;
        }
        y = -std::log(gamma - y);
        mu = poly(kC3, an);
        sigma = std::exp(poly(kC4, an));
    } else {
        const double xx = std::log(an);
        mu = poly(kC5, xx);
        sigma = std::exp(poly(kC6, xx));
    }
    // Upper normal tail via erfc keeps digits far out in the tail.
    r.p_value = std::clamp(0.5 * std::erfc((y - mu) / sigma / std::sqrt(2.0)), 0.0, 1.0);
    return r;
}

}  // namespace reqnet::stats
