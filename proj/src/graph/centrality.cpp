#include <algorithm>
#include <bit>

#include "reqnet/graph.hpp"

namespace reqnet::graph {

namespace {

using kernels::BitMatrix;
using kernels::kWordBits;
using kernels::Word;

// Sources per multi-source BFS batch.
constexpr std::size_t kBatchSources = 1024;

// Above this many vertices clustering switches from an adjacency bit
// matrix to sorted-list intersection to bound memory.
constexpr std::size_t kDenseClusteringLimit = 16384;

}  // namespace

std::vector<double> closeness_all(const FeatureGraph& g, const kernels::BitsetKernels& k) {
    const std::size_t n = g.vertex_count();
    std::vector<double> out(n, 0.0);
    if (n == 0) return out;

    std::vector<std::uint64_t> dist_sum(n, 0);
    std::vector<std::uint64_t> reached(n, 1);  // each source reaches itself

    const std::size_t batch = std::min(n, kBatchSources);
    const std::size_t words = kernels::words_for(batch);
    BitMatrix seen(n, batch), frontier(n, batch), next(n, batch);

    // Bit j of a vertex's row stands for source `first + j`. One level of
    // the BFS is `next[v] = OR of frontier[u] over neighbours u`, masked by
    // what v has already seen.
    for (std::size_t first = 0; first < n; first += batch) {
        const std::size_t count = std::min(batch, n - first);
        seen.clear();
        frontier.clear();
        for (std::size_t j = 0; j < count; ++j) {
            seen.set(first + j, j);
            frontier.set(first + j, j);
        }
        for (std::uint64_t level = 1;; ++level) {
            bool advanced = false;
            for (VertexId v = 0; v < n; ++v) {
                Word* row = next.row(v);
                std::fill(row, row + words, Word{0});
                for (VertexId u : g.neighbors(v)) k.or_into(row, frontier.row(u), words);
                if (k.mask_new(row, seen.row(v), words) == 0) continue;
                advanced = true;
                for (std::size_t w = 0; w < words; ++w) {
                    for (Word bits = row[w]; bits; bits &= bits - 1) {
                        const std::size_t src = first + w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
                        dist_sum[src] += level;
                        ++reached[src];
                    }
                }
            }
            if (!advanced) break;
            std::swap(frontier, next);
        }
    }

    for (VertexId v = 0; v < n; ++v) {
        if (reached[v] > 1)
            out[v] = static_cast<double>(reached[v] - 1) / static_cast<double>(dist_sum[v]);
    }
    return out;
}

std::vector<double> clustering_all(const FeatureGraph& g, const kernels::BitsetKernels& k) {
    const std::size_t n = g.vertex_count();
    std::vector<double> out(n, 0.0);
    if (n == 0) return out;

    // links[v] = number of edges among v's neighbours
    std::vector<std::uint64_t> links(n, 0);
    if (n <= kDenseClusteringLimit) {
        BitMatrix adj(n, n);
        for (const auto& e : g.edges()) {
            adj.set(e.u, e.v);
            adj.set(e.v, e.u);
        }
        // Each neighbour edge (u, w) is seen from both u and w.
        for (VertexId v = 0; v < n; ++v) {
            std::uint64_t twice = 0;
            for (VertexId u : g.neighbors(v)) twice += k.and_popcount(adj.row(v), adj.row(u), adj.stride());
            links[v] = twice / 2;
        }
    } else {
        for (VertexId v = 0; v < n; ++v) {
            const auto nv = g.neighbors(v);
            std::uint64_t twice = 0;
            for (VertexId u : nv) {
                const auto nu = g.neighbors(u);
                auto a = nv.begin();
                auto b = nu.begin();
                while (a != nv.end() && b != nu.end()) {
                    if (*a < *b) ++a;
                    else if (*b < *a) ++b;
                    else { ++twice; ++a; ++b; }
                }
            }
            links[v] = twice / 2;
        }
    }

    for (VertexId v = 0; v < n; ++v) {
        const std::uint64_t d = g.degree(v);
        if (d <= 1) continue;
        out[v] = static_cast<double>(links[v]) / static_cast<double>(d * (d - 1) / 2);
    }
    return out;
}

}  // namespace reqnet::graph
