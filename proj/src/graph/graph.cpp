#include <algorithm>
#include <numeric>
#include <set>

#include "reqnet/error.hpp"
#include "reqnet/graph.hpp"

namespace reqnet::graph {

FeatureGraph::FeatureGraph(std::vector<std::string> labels, const std::vector<LabeledEdge>& edges)
    : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
        throw DomainError("duplicate vertex label");

    adjacency_.resize(labels_.size());
    edges_.reserve(edges.size());
    for (const auto& e : edges) {
        auto a = find(e.a);
        auto b = find(e.b);
        if (!a || !b) throw DomainError("edge (" + e.a + ", " + e.b + ") has an unknown endpoint");
        if (*a == *b) throw DomainError("self-loop on '" + e.a + "'");
        if (e.weight == 0) throw DomainError("edge (" + e.a + ", " + e.b + ") has zero weight");
        edges_.push_back({std::min(*a, *b), std::max(*a, *b), e.weight});
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& x, const Edge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
            throw DomainError("duplicate edge (" + labels_[edges_[i].u] + ", " + labels_[edges_[i].v] + ")");
    }
    for (const auto& e : edges_) {
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

std::optional<VertexId> FeatureGraph::find(std::string_view label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<VertexId>(it - labels_.begin());
}

bool FeatureGraph::has_edge(VertexId a, VertexId b) const {
    const auto& adj = adjacency_[a];
    return std::binary_search(adj.begin(), adj.end(), b);
}

std::size_t FeatureGraph::weight(VertexId a, VertexId b) const {
    if (a == b) return 0;
    const Edge key{std::min(a, b), std::max(a, b), 0};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key, [](const Edge& x, const Edge& y) {
        return std::tie(x.u, x.v) < std::tie(y.u, y.v);
    });
    if (it == edges_.end() || it->u != key.u || it->v != key.v) return 0;
    return it->weight;
}

FeatureGraph build_graph(const features::PairCounts& pairs, const features::UnigramCounts& unigrams,
                         const BuildOptions& options) {
    if (options.min_unigram < 1 || options.min_pair < 1)
        throw DomainError("graph thresholds must be at least 1");

    std::set<std::string> kept;
    for (const auto& [f, c] : unigrams.counts) {
        if (c >= options.min_unigram) kept.insert(f);
    }

    std::vector<FeatureGraph::LabeledEdge> edges;
    std::set<std::string> touched;
    for (const auto& [key, c] : pairs.counts) {
        if (c < options.min_pair || !kept.contains(key.first) || !kept.contains(key.second)) continue;
        edges.push_back({key.first, key.second, c});
        touched.insert(key.first);
        touched.insert(key.second);
    }
    const auto& vertex_set = options.keep_isolated ? kept : touched;
    return FeatureGraph({vertex_set.begin(), vertex_set.end()}, edges);
}

std::vector<std::size_t> degree_all(const FeatureGraph& g) {
    std::vector<std::size_t> out(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) out[v] = g.degree(v);
    return out;
}

std::vector<std::size_t> connected_components(const FeatureGraph& g) {
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> comp(g.vertex_count(), unset);
    std::vector<VertexId> stack;
    std::size_t next_id = 0;
    // Scanning in id order makes each component's id follow its smallest label.
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
        if (comp[s] != unset) continue;
        comp[s] = next_id;
        stack.push_back(s);
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            for (VertexId u : g.neighbors(v)) {
                if (comp[u] == unset) {
                    comp[u] = next_id;
                    stack.push_back(u);
                }
            }
        }
        ++next_id;
    }
    return comp;
}

VertexMetrics compute_metrics(const FeatureGraph& g, const kernels::BitsetKernels& k) {
    return {degree_all(g), closeness_all(g, k), clustering_all(g, k), connected_components(g)};
}

}  // namespace reqnet::graph
