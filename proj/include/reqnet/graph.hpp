#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reqnet/features.hpp"
#include "reqnet/kernels/bitset.hpp"

namespace reqnet::graph {

using VertexId = std::size_t;

struct Edge {
    VertexId u = 0;  // u < v
    VertexId v = 0;
    std::size_t weight = 1;

    bool operator==(const Edge&) const = default;
};

/// Undirected simple graph over feature labels. Vertex ids follow ascending
/// label order, edges are stored once with u < v and sorted, and adjacency
/// lists are sorted. Immutable after construction.
class FeatureGraph {
public:
    FeatureGraph() = default;

    /// Labels must be unique. Throws DomainError on self-loops, duplicate
    /// edges, unknown endpoints or zero weights.
    struct LabeledEdge {
        std::string a;
        std::string b;
        std::size_t weight = 1;
    };
    FeatureGraph(std::vector<std::string> labels, const std::vector<LabeledEdge>& edges);

    std::size_t vertex_count() const { return labels_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(VertexId v) const { return labels_[v]; }
    std::optional<VertexId> find(std::string_view label) const;

    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
    std::size_t degree(VertexId v) const { return adjacency_[v].size(); }
    bool has_edge(VertexId a, VertexId b) const;
    /// 0 when there is no edge.
    std::size_t weight(VertexId a, VertexId b) const;

    bool operator==(const FeatureGraph& o) const { return labels_ == o.labels_ && edges_ == o.edges_; }

private:
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<VertexId>> adjacency_;
};

struct BuildOptions {
    std::size_t min_unigram = 1;
    std::size_t min_pair = 1;
    bool keep_isolated = false;
};

/// Keeps features with unigram count >= min_unigram and edges between kept
/// features with pair count >= min_pair. Vertices left without an edge are
/// dropped unless keep_isolated. May return an empty graph.
FeatureGraph build_graph(const features::PairCounts& pairs, const features::UnigramCounts& unigrams,
                         const BuildOptions& options);

// ---------------------------------------------------------------------------
// Metrics. Results are indexed by VertexId.

std::vector<std::size_t> degree_all(const FeatureGraph& g);

/// Hop-count closeness normalised within each connected component:
/// (n_c - 1) / sum of distances to the other vertices of the component.
/// Isolated vertices score 0. Uses multi-source bit-parallel BFS.
std::vector<double> closeness_all(const FeatureGraph& g,
                                  const kernels::BitsetKernels& k = kernels::active_kernels());

/// Local clustering coefficient: edges among neighbours over
/// deg(deg-1)/2; 0 when deg <= 1.
std::vector<double> clustering_all(const FeatureGraph& g,
                                   const kernels::BitsetKernels& k = kernels::active_kernels());

/// Component id per vertex; ids are numbered by each component's smallest
/// label, so the component holding vertex 0 is 0.
std::vector<std::size_t> connected_components(const FeatureGraph& g);

struct VertexMetrics {
    std::vector<std::size_t> degree;
    std::vector<double> closeness;
    std::vector<double> clustering;
    std::vector<std::size_t> component;
};

VertexMetrics compute_metrics(const FeatureGraph& g,
                              const kernels::BitsetKernels& k = kernels::active_kernels());

// ---------------------------------------------------------------------------
// Communities

/// Unweighted Newman modularity Q = sum_i (e_ii - a_i^2). 0 for an edgeless
/// graph. `assignment[v]` is any community label.
double modularity(const FeatureGraph& g, std::span<const std::size_t> assignment);

struct MergeStep {
    std::size_t step = 0;    // 1-based
    std::size_t kept = 0;    // surviving community id (smaller of the pair)
    std::size_t merged = 0;  // absorbed community id
    double delta_q = 0.0;
    double q_after = 0.0;
};

struct CommunityPartition {
    /// Community per vertex, numbered by smallest member label.
    std::vector<std::size_t> assignment;
    std::size_t community_count = 0;
    /// Recomputed from scratch on the returned assignment.
    double modularity = 0.0;
    /// Q before any merge (all singletons).
    double initial_q = 0.0;
    std::vector<MergeStep> dendrogram;
    /// Number of dendrogram merges applied to reach `assignment`.
    std::size_t cut_step = 0;
};

/// Clauset-Newman-Moore greedy agglomeration. Starts from singletons, always
/// merges the adjacent pair with the largest delta Q (ties within 1e-12 go to
/// the lexicographically smallest id pair), records every merge, and returns
/// the partition at the first step with maximal Q.
CommunityPartition detect_communities_cnm(const FeatureGraph& g);

// ---------------------------------------------------------------------------
// Export

enum class ExportFormat { graphml, dot, csv };
std::optional<ExportFormat> parse_export_format(std::string_view text);
std::string_view to_string(ExportFormat f);

/// Vertex attributes written alongside the structure; either may be absent.
struct ExportAttributes {
    const VertexMetrics* metrics = nullptr;
    const std::vector<std::size_t>* community = nullptr;
};

void export_graph(std::ostream& out, const FeatureGraph& g, ExportFormat format,
                  const ExportAttributes& attrs = {});

/// Reads the CSV edge list written by export_graph.
FeatureGraph read_edge_csv(std::istream& in);

/// Vertex list (`feature` header) plus edge list; together they carry
/// isolated vertices that an edge list alone would lose.
void write_vertices_csv(std::ostream& out, const FeatureGraph& g);
FeatureGraph read_graph_csv(std::istream& vertices, std::istream& edges);

}  // namespace reqnet::graph
