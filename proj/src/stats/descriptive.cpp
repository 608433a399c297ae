#include <algorithm>
#include <cmath>

#include "reqnet/error.hpp"
#include "reqnet/stats.hpp"

namespace reqnet::stats {

Descriptive descriptive(std::span<const double> values) {
    if (values.empty()) throw DomainError("descriptive statistics need at least one value");
    Descriptive d;
    d.n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    d.mean = sum / static_cast<double>(d.n);

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = d.n / 2;
    d.median = d.n % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);

    if (d.n < 2) {
        d.degenerate = true;
        return d;
    }
    double ss = 0.0;
    for (double v : values) ss += (v - d.mean) * (v - d.mean);
    d.std_dev = std::sqrt(ss / static_cast<double>(d.n - 1));
    return d;
}

double holsti(const ReliabilityInput& r) {
    if (r.n1 + r.n2 == 0) throw DomainError("Holsti coefficient needs at least one coding decision");
    if (r.m > std::min(r.n1, r.n2)) throw DomainError("agreements cannot exceed either coder's decisions");
    return 2.0 * static_cast<double>(r.m) / static_cast<double>(r.n1 + r.n2);
}

}  // namespace reqnet::stats
