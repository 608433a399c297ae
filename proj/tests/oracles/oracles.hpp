// Brute-force reference implementations. Deliberately naive and written
// without the library's helpers so that agreement means something.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<int>>;

inline Matrix adjacency(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    Matrix a(n, std::vector<int>(n, 0));
    for (auto [u, v] : edges) a[u][v] = a[v][u] = 1;
    return a;
}

/// Floyd-Warshall, then (reachable others) / (sum of distances to them).
inline std::vector<double> closeness(const Matrix& a) {
    const std::size_t n = a.size();
    const long long inf = std::numeric_limits<long long>::max() / 4;
    std::vector<std::vector<long long>> d(n, std::vector<long long>(n, inf));
    for (std::size_t i = 0; i < n; ++i) {
        d[i][i] = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (a[i][j]) d[i][j] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        long long sum = 0, reached = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || d[i][j] >= inf) continue;
            sum += d[i][j];
            ++reached;
        }
        out[i] = sum > 0 ? static_cast<double>(reached) / static_cast<double>(sum) : 0.0;
    }
    return out;
}

/// Triangles through each vertex by enumerating all vertex triples.
inline std::vector<double> clustering(const Matrix& a) {
    const std::size_t n = a.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        long long deg = 0, links = 0;
        for (std::size_t i = 0; i < n; ++i) deg += a[v][i];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (a[v][i] && a[v][j] && a[i][j]) ++links;
        if (deg >= 2) out[v] = static_cast<double>(links) / (static_cast<double>(deg * (deg - 1)) / 2.0);
    }
    return out;
}

/// Q = sum_c [ L_c / m - (D_c / 2m)^2 ].
inline double modularity(const Matrix& a, const std::vector<std::size_t>& comm) {
    const std::size_t n = a.size();
    double m = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m += a[i][j];
    if (m == 0) return 0.0;
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (comm[i] != comm[j]) continue;
            double ki = 0, kj = 0;
            for (std::size_t t = 0; t < n; ++t) {
                ki += a[i][t];
                kj += a[j][t];
            }
            q += a[i][j] - ki * kj / (2.0 * m);
        }
    }
    return q / (2.0 * m);
}

/// Maximum modularity over every set partition (restricted growth strings),
/// with per-block degree and internal-edge tallies kept incrementally.
inline double max_modularity(const Matrix& a) {
    const std::size_t n = a.size();
    std::vector<double> deg(n, 0.0);
    double m = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            deg[i] += a[i][j];
            if (j > i) m += a[i][j];
        }
    if (m == 0) return 0.0;

    std::vector<std::size_t> block(n, 0);
    std::vector<double> dsum(n, 0.0), internal(n, 0.0);
    double best = -1.0;
    auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
        if (i == n) {
            double q = 0.0;
            for (std::size_t b = 0; b < blocks; ++b) q += internal[b] / m - (dsum[b] / (2 * m)) * (dsum[b] / (2 * m));
            best = std::max(best, q);
            return;
        }
        for (std::size_t b = 0; b <= blocks && b < n; ++b) {
            double added = 0;
            for (std::size_t j = 0; j < i; ++j)
                if (block[j] == b) added += a[i][j];
            block[i] = b;
            dsum[b] += deg[i];
            internal[b] += added;
            self(self, i + 1, b == blocks ? blocks + 1 : blocks);
            dsum[b] -= deg[i];
            internal[b] -= added;
        }
    };
    rec(rec, 0, 0);
    return best;
}

// ---------------------------------------------------------------------------
// Rank tests

/// Midrank of each value by direct counting: 1 + #smaller + (#equal - 1) / 2.
inline std::vector<double> midranks(const std::vector<double>& x) {
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double less = 0, equal = 0;
        for (double y : x) {
            less += y < x[i];
            equal += y == x[i];
        }
        r[i] = 1.0 + less + (equal - 1.0) / 2.0;
    }
    return r;
}

/// Tie-corrected Kruskal-Wallis H for pooled values with group labels.
inline double kruskal_h(const std::vector<double>& x, const std::vector<int>& label, int k) {
    const double n = static_cast<double>(x.size());
    const auto r = midranks(x);
    std::vector<double> sum(k, 0.0), cnt(k, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum[label[i]] += r[i];
        cnt[label[i]] += 1;
    }
    double h = 0.0;
    for (int g = 0; g < k; ++g) h += sum[g] * sum[g] / cnt[g];
    h = 12.0 / (n * (n + 1)) * h - 3 * (n + 1);
    double ties = 0.0;
    std::vector<bool> seen(x.size(), false);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (seen[i]) continue;
        double t = 0;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j] == x[i]) {
                seen[j] = true;
                ++t;
            }
        ties += t * t * t - t;
    }
    const double c = 1.0 - ties / (n * n * n - n);
    return c > 0 ? h / c : 0.0;
}

/// Share of all label permutations whose H reaches the observed H.
inline double kruskal_permutation_p(const std::vector<std::vector<double>>& groups) {
    std::vector<double> x;
    std::vector<int> label;
    const int k = static_cast<int>(groups.size());
    for (int g = 0; g < k; ++g)
        for (double v : groups[g]) {
            x.push_back(v);
            label.push_back(g);
        }
    const double h_obs = kruskal_h(x, label, k);
    std::vector<int> perm = label;
    std::sort(perm.begin(), perm.end());
    double hits = 0, total = 0;
    do {
        total += 1;
        if (kruskal_h(x, perm, k) >= h_obs - 1e-9) hits += 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return hits / total;
}

/// U for sample a by pairwise comparison, ties counting one half.
inline double mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
    double u = 0;
    for (double x : a)
        for (double y : b) u += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
    return u;
}

/// Two-sided exact p over all C(N, n_a) reassignments.
inline double mann_whitney_permutation_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    const double centre = static_cast<double>(a.size() * b.size()) / 2.0;
    const double d_obs = std::fabs(mann_whitney_u(a, b) - centre);
    std::vector<int> mask(pooled.size(), 0);
    std::fill(mask.begin() + static_cast<std::ptrdiff_t>(b.size()), mask.end(), 1);
    double hits = 0, total = 0;
    do {
        std::vector<double> aa, bb;
        for (std::size_t i = 0; i < pooled.size(); ++i) (mask[i] ? aa : bb).push_back(pooled[i]);
        total += 1;
        if (std::fabs(mann_whitney_u(aa, bb) - centre) >= d_obs - 1e-9) hits += 1;
    } while (std::next_permutation(mask.begin(), mask.end()));
    return hits / total;
}

}  // namespace oracle
