#include <map>
#include <numeric>
#include <unordered_map>

#include "reqnet/error.hpp"
#include "reqnet/graph.hpp"

namespace reqnet::graph {

namespace {

constexpr double kTieEpsilon = 1e-12;

/// Renumbers community labels in order of each community's smallest vertex.
std::vector<std::size_t> canonical_labels(std::span<const std::size_t> raw, std::size_t& count) {
    std::unordered_map<std::size_t, std::size_t> remap;
    std::vector<std::size_t> out(raw.size());
    for (std::size_t v = 0; v < raw.size(); ++v) {
        auto [it, inserted] = remap.emplace(raw[v], remap.size());
        out[v] = it->second;
    }
    count = remap.size();
    return out;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

}  // namespace

double modularity(const FeatureGraph& g, std::span<const std::size_t> assignment) {
    if (assignment.size() != g.vertex_count())
        throw DomainError("community assignment does not cover every vertex");
    const double m = static_cast<double>(g.edge_count());
    if (g.edge_count() == 0) return 0.0;

    std::unordered_map<std::size_t, std::pair<std::size_t, std::size_t>> per;  // inner edges, degree sum
    for (const auto& e : g.edges()) {
        if (assignment[e.u] == assignment[e.v]) ++per[assignment[e.u]].first;
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) per[assignment[v]].second += g.degree(v);

    // Sum in community-label order so the result does not depend on hashing.
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> ordered(per.begin(), per.end());
    double q = 0.0;
    for (const auto& [c, stats] : ordered) {
        const double eii = static_cast<double>(stats.first) / m;
        const double ai = static_cast<double>(stats.second) / (2.0 * m);
        q += eii - ai * ai;
    }
    return q;
}

CommunityPartition detect_communities_cnm(const FeatureGraph& g) {
    const std::size_t n = g.vertex_count();
    CommunityPartition result;
    if (g.edge_count() == 0) {
        result.assignment.resize(n);
        std::iota(result.assignment.begin(), result.assignment.end(), std::size_t{0});
        result.community_count = n;
        return result;
    }

    const double m = static_cast<double>(g.edge_count());
    std::vector<double> a(n);
    for (VertexId v = 0; v < n; ++v) a[v] = static_cast<double>(g.degree(v)) / (2.0 * m);

    // dq[i][j]: change in Q from merging communities i and j (adjacent only).
    std::vector<std::map<std::size_t, double>> dq(n);
    for (const auto& e : g.edges()) {
        const double d = 1.0 / m - 2.0 * a[e.u] * a[e.v];
        dq[e.u][e.v] = d;
        dq[e.v][e.u] = d;
    }

    double q = 0.0;
    for (double ai : a) q -= ai * ai;
    result.initial_q = q;

    double best_q = q;
    std::size_t best_step = 0;
    while (true) {
        bool found = false;
        std::size_t bi = 0, bj = 0;
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (auto it = dq[i].upper_bound(i); it != dq[i].end(); ++it) {
                if (!found || it->second > best + kTieEpsilon) {
                    found = true;
                    best = it->second;
                    bi = i;
                    bj = it->first;
                }
            }
        }
        if (!found) break;

        // Merge bj into bi.
        std::map<std::size_t, double> merged;
        auto& row_i = dq[bi];
        auto& row_j = dq[bj];
        for (const auto& [k, v] : row_i) {
            if (k == bj) continue;
            auto other = row_j.find(k);
            merged[k] = other != row_j.end() ? v + other->second : v - 2.0 * a[bj] * a[k];
        }
        for (const auto& [k, v] : row_j) {
            if (k == bi || row_i.contains(k)) continue;
            merged[k] = v - 2.0 * a[bi] * a[k];
        }
        for (const auto& [k, v] : row_j) {
            if (k != bi) dq[k].erase(bj);
        }
        row_j.clear();
        for (const auto& [k, v] : merged) dq[k][bi] = v;
        row_i = std::move(merged);
        a[bi] += a[bj];
        a[bj] = 0.0;

        q += best;
        result.dendrogram.push_back({result.dendrogram.size() + 1, bi, bj, best, q});
        if (q > best_q + kTieEpsilon) {
            best_q = q;
            best_step = result.dendrogram.size();
        }
    }

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t s = 0; s < best_step; ++s) {
        const auto& step = result.dendrogram[s];
        parent[find_root(parent, step.merged)] = find_root(parent, step.kept);
    }
    std::vector<std::size_t> raw(n);
    for (VertexId v = 0; v < n; ++v) raw[v] = find_root(parent, v);

    result.assignment = canonical_labels(raw, result.community_count);
    result.cut_step = best_step;
    result.modularity = modularity(g, result.assignment);
    return result;
}

}  // namespace reqnet::graph
