#pragma once

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "reqnet/graph.hpp"

namespace fixture {

using IndexEdges = std::vector<std::pair<std::size_t, std::size_t>>;

/// Ten-person friendship graph: Chan at the centre, Sherlock sharing three
/// of Chan's friends, Alex with four leaves of its own.
inline reqnet::graph::FeatureGraph friends() {
    using E = reqnet::graph::FeatureGraph::LabeledEdge;
    std::vector<std::string> names = {"Alex", "Andre", "Chan", "Chris", "James",
                                      "Jeff", "Michael", "Phillip", "Sherlock", "Steve"};
    std::vector<E> edges = {
        {"Chan", "Alex"},     {"Chan", "Steve"},   {"Chan", "Sherlock"}, {"Chan", "Andre"},
        {"Chan", "Michael"},  {"Sherlock", "Steve"}, {"Sherlock", "Andre"}, {"Sherlock", "Michael"},
        {"Alex", "Phillip"},  {"Alex", "Chris"},   {"Alex", "Jeff"},     {"Alex", "James"},
    };
    return {names, edges};
}

inline std::string vertex_name(std::size_t i) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "v%03zu", i);
    return buf;
}

/// Labels sort in index order, so VertexId i is index i.
inline reqnet::graph::FeatureGraph make_graph(std::size_t n, const IndexEdges& edges) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(vertex_name(i));
    std::vector<reqnet::graph::FeatureGraph::LabeledEdge> le;
    for (auto [u, v] : edges) le.push_back({labels[u], labels[v], 1});
    return {labels, le};
}

/// Random spanning tree plus each remaining pair with probability p.
inline IndexEdges random_connected(std::mt19937_64& rng, std::size_t n, double p) {
    IndexEdges edges;
    std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
    for (std::size_t v = 1; v < n; ++v) {
        const std::size_t u = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
        edges.emplace_back(u, v);
        has[u][v] = true;
    }
    std::bernoulli_distribution coin(p);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (!has[u][v] && coin(rng)) edges.emplace_back(u, v);
    return edges;
}

/// Cliques on [0, a) and [a, a + b) joined by the single edge (a - 1, a).
inline IndexEdges two_cliques(std::size_t a, std::size_t b) {
    IndexEdges edges;
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = i + 1; j < a; ++j) edges.emplace_back(i, j);
    for (std::size_t i = a; i < a + b; ++i)
        for (std::size_t j = i + 1; j < a + b; ++j) edges.emplace_back(i, j);
    edges.emplace_back(a - 1, a);
    return edges;
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("reqnet_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace fixture
