#pragma once

#include <random>

#include "bslimits/graph.hpp"

namespace bslimits::testing {

// G(n, p) conditioned on connectivity, rooted uniformly.
inline RootedGraph random_connected(std::mt19937_64 &rng, int n, double p) {
    std::bernoulli_distribution coin(p);
    while (true) {
        RootedGraph g(n, std::uniform_int_distribution<int>(0, n - 1)(rng));
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (coin(rng)) {
                    g.add_edge(u, v);
                }
            }
        }
        if (is_connected(g)) {
            return g;
        }
    }
}

} // namespace bslimits::testing
