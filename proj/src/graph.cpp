#include "bslimits/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace bslimits {

RootedGraph::RootedGraph(int n, int root) {
    if (n < 1) {
        throw std::invalid_argument("graph needs at least one vertex");
    }
    adj_.resize(n);
    set_root(root);
}

RootedGraph RootedGraph::from_edges(int n, std::span<const Edge> edges, int root) {
    RootedGraph g(n, root);
    for (auto [u, v] : edges) {
        g.add_edge(u, v);
    }
    return g;
}

void RootedGraph::set_root(int r) {
    if (r < 0 || r >= size()) {
        throw std::invalid_argument("root " + std::to_string(r) + " out of range");
    }
    root_ = r;
}

int RootedGraph::add_vertex() {
    adj_.emplace_back();
    return size() - 1;
}

void RootedGraph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= size() || v >= size()) {
        throw std::invalid_argument("edge endpoint out of range");
    }
    if (u == v) {
        throw std::invalid_argument("self-loop " + std::to_string(u));
    }
    auto &nu = adj_[u];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it != nu.end() && *it == v) {
        throw std::invalid_argument("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    nu.insert(it, v);
    auto &nv = adj_[v];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
}

bool RootedGraph::has_edge(int u, int v) const {
    const auto &nu = adj_.at(u);
    return std::binary_search(nu.begin(), nu.end(), v);
}

std::size_t RootedGraph::edge_count() const {
    std::size_t m = 0;
    for (const auto &n : adj_) {
        m += n.size();
    }
    return m / 2;
}

std::vector<Edge> RootedGraph::edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < size(); ++u) {
        for (int v : adj_[u]) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

std::vector<std::uint64_t> RootedGraph::adjacency_masks() const {
    if (size() > 64) {
        throw std::length_error("adjacency_masks: graph has more than 64 vertices");
    }
    std::vector<std::uint64_t> rows(size(), 0);
    for (int u = 0; u < size(); ++u) {
        for (int v : adj_[u]) {
            rows[u] |= std::uint64_t{1} << v;
        }
    }
    return rows;
}

bool operator==(const RootedGraph &a, const RootedGraph &b) {
    return a.root_ == b.root_ && a.adj_ == b.adj_;
}

bool is_connected(const RootedGraph &g) {
    return static_cast<int>(component_of(g, 0).size()) == g.size();
}

std::vector<int> component_of(const RootedGraph &g, int from, int blocked) {
    std::vector<char> seen(g.size(), 0);
    std::vector<int> out{from};
    seen[from] = 1;
    if (blocked >= 0) {
        seen[blocked] = 1;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (int w : g.neighbours(out[i])) {
            if (!seen[w]) {
                seen[w] = 1;
                out.push_back(w);
            }
        }
    }
    return out;
}

RootedGraph induced_subgraph(const RootedGraph &g, std::span<const int> vertices, int root_pos) {
    RootedGraph h(static_cast<int>(vertices.size()), root_pos);
    std::vector<int> index(g.size(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        index[vertices[i]] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (int w : g.neighbours(vertices[i])) {
            const int j = index[w];
            if (j > static_cast<int>(i)) {
                h.add_edge(static_cast<int>(i), j);
            }
        }
    }
    return h;
}

RootedGraph join(std::span<const RootedGraph> parts) {
    RootedGraph out(1, 0);
    for (const auto &p : parts) {
        std::vector<int> map(p.size(), -1);
        map[p.root()] = 0;
        for (int v = 0; v < p.size(); ++v) {
            if (v != p.root()) {
                map[v] = out.add_vertex();
            }
        }
        for (auto [u, v] : p.edges()) {
            out.add_edge(map[u], map[v]);
        }
    }
    return out;
}

RootedGraph ball(const RootedGraph &g, int r) {
    std::vector<int> dist(g.size(), -1);
    std::vector<int> order{g.root()};
    dist[g.root()] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const int v = order[i];
        if (dist[v] == r) {
            continue;
        }
        for (int w : g.neighbours(v)) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                order.push_back(w);
            }
        }
    }
    return induced_subgraph(g, order, 0);
}

RootedGraph path_graph(int vertices, int root) {
    RootedGraph g(vertices, root);
    for (int i = 0; i + 1 < vertices; ++i) {
        g.add_edge(i, i + 1);
    }
    return g;
}

RootedGraph cycle_graph(int vertices, int root) {
    if (vertices < 3) {
        throw std::invalid_argument("cycle needs at least 3 vertices");
    }
    RootedGraph g = path_graph(vertices, root);
    g.add_edge(vertices - 1, 0);
    return g;
}

RootedGraph complete_graph(int vertices, int root) {
    RootedGraph g(vertices, root);
    for (int i = 0; i < vertices; ++i) {
        for (int j = i + 1; j < vertices; ++j) {
            g.add_edge(i, j);
        }
    }
    return g;
}

RootedGraph star_graph(int leaves) {
    RootedGraph g(leaves + 1, 0);
    for (int i = 1; i <= leaves; ++i) {
        g.add_edge(0, i);
    }
    return g;
}

} // namespace bslimits
