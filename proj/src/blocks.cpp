#include "bslimits/blocks.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace bslimits {

BlockCutTree block_cut_tree(const RootedGraph &g) {
    const int n = g.size();
    if (!is_connected(g)) {
        throw std::invalid_argument("block_cut_tree: graph is disconnected");
    }
    BlockCutTree out;
    out.blocks_of_vertex.resize(n);
    if (n == 1) {
        out.blocks.push_back({0});
        out.blocks_of_vertex[0].push_back(0);
        return out;
    }

    // Iterative Hopcroft-Tarjan with an edge stack.
    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
    std::vector<std::size_t> next_nb(n, 0);
    std::vector<Edge> estack;
    std::vector<int> stack{0};
    int timer = 0;
    disc[0] = low[0] = timer++;
    while (!stack.empty()) {
        const int v = stack.back();
        const auto &nb = g.neighbours(v);
        if (next_nb[v] < nb.size()) {
            const int w = nb[next_nb[v]++];
            if (disc[w] < 0) {
                parent[w] = v;
                disc[w] = low[w] = timer++;
                estack.emplace_back(v, w);
                stack.push_back(w);
            } else if (w != parent[v] && disc[w] < disc[v]) {
                low[v] = std::min(low[v], disc[w]);
                estack.emplace_back(v, w);
            }
            continue;
        }
        stack.pop_back();
        const int p = parent[v];
        if (p < 0) {
            continue;
        }
        low[p] = std::min(low[p], low[v]);
        if (low[v] >= disc[p]) {
            std::vector<int> block;
            while (true) {
                const Edge e = estack.back();
                estack.pop_back();
                block.push_back(e.first);
                block.push_back(e.second);
                if (e.first == p && e.second == v) {
                    break;
                }
            }
            std::sort(block.begin(), block.end());
            block.erase(std::unique(block.begin(), block.end()), block.end());
            out.blocks.push_back(std::move(block));
        }
    }
    for (std::size_t b = 0; b < out.blocks.size(); ++b) {
        for (int v : out.blocks[b]) {
            out.blocks_of_vertex[v].push_back(static_cast<int>(b));
        }
    }
    for (int v = 0; v < n; ++v) {
        if (out.blocks_of_vertex[v].size() > 1) {
            out.cutvertices.push_back(v);
        }
    }
    return out;
}

bool is_biconnected_block(const RootedGraph &g) {
    if (g.size() < 2 || !is_connected(g)) {
        return false;
    }
    return block_cut_tree(g).blocks.size() == 1;
}

} // namespace bslimits
