#include <algorithm>
#include <numeric>

#include "reqnet/error.hpp"
#include "reqnet/pipeline.hpp"

namespace reqnet::pipeline {

std::string_view to_string(Tier t) {
    switch (t) {
        case Tier::high: return "high";
        case Tier::medium: return "medium";
        case Tier::low: return "low";
    }
    return "low";
}

TierAssignment tertile_partition(std::string metric, std::span<const std::string> labels,
                                 std::span<const double> values) {
    if (labels.size() != values.size())
        throw ConsistencyError("tier partition: " + std::to_string(labels.size()) + " labels but " +
                               std::to_string(values.size()) + " values");
    const std::size_t n = labels.size();
    if (n < 3) throw DomainError("tier partition needs at least 3 vertices, got " + std::to_string(n));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] > values[b];
        return labels[a] < labels[b];
    });

    const std::size_t base = n / 3, rem = n % 3;
    const std::array<std::size_t, 3> sizes = {base + (rem > 0), base + (rem > 1), base};

    TierAssignment out;
    out.metric = std::move(metric);
    std::size_t pos = 0;
    for (std::size_t t = 0; t < 3; ++t) {
        out.tiers[t].reserve(sizes[t]);
        for (std::size_t i = 0; i < sizes[t]; ++i, ++pos)
            out.tiers[t].push_back({labels[order[pos]], values[order[pos]]});
    }
    return out;
}

std::vector<TierRow> top_k(std::span<const TierRow> rows, std::size_t k) {
    if (k < 1) throw UsageError("top-k needs k >= 1");
    const std::size_t m = std::min(k, rows.size());
    return {rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(m)};
}

}  // namespace reqnet::pipeline
