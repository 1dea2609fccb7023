#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace bslimits {

using Edge = std::pair<int, int>;

// Finite simple graph on vertices 0..n-1 with a distinguished root.
// Labelled mode uses the vertex indices as labels.
class RootedGraph {
public:
    RootedGraph() : adj_(1) {}
    explicit RootedGraph(int n, int root = 0);

    static RootedGraph from_edges(int n, std::span<const Edge> edges, int root = 0);

    int size() const { return static_cast<int>(adj_.size()); }
    int root() const { return root_; }
    void set_root(int r);

    int add_vertex();
    // Throws std::invalid_argument on loops, duplicates or bad indices.
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;

    const std::vector<int> &neighbours(int v) const { return adj_.at(v); }
    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
    std::size_t edge_count() const;
    std::vector<Edge> edges() const;

    // Bitmask adjacency rows; requires size() <= 64.
    std::vector<std::uint64_t> adjacency_masks() const;

    friend bool operator==(const RootedGraph &a, const RootedGraph &b);

private:
    std::vector<std::vector<int>> adj_;
    int root_ = 0;
};

bool is_connected(const RootedGraph &g);

// Vertices reachable from `from` without passing through `blocked` (-1: none).
std::vector<int> component_of(const RootedGraph &g, int from, int blocked = -1);

// Subgraph induced on `vertices` (in that order); vertices[root_pos] becomes the root.
RootedGraph induced_subgraph(const RootedGraph &g, std::span<const int> vertices, int root_pos = 0);

// Disjoint union with all roots identified into a single root (vertex 0).
RootedGraph join(std::span<const RootedGraph> parts);

// Ball of radius r around the root, as an induced subgraph rooted at index 0.
RootedGraph ball(const RootedGraph &g, int r);

RootedGraph path_graph(int vertices, int root = 0);
RootedGraph cycle_graph(int vertices, int root = 0);
RootedGraph complete_graph(int vertices, int root = 0);
RootedGraph star_graph(int leaves);

} // namespace bslimits
