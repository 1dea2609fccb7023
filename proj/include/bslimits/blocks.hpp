#pragma once

#include <vector>

#include "bslimits/graph.hpp"

namespace bslimits {

// Block decomposition of a connected graph. Bridges are blocks of two
// vertices; a single vertex graph has one trivial block.
struct BlockCutTree {
    std::vector<std::vector<int>> blocks;           // sorted vertex sets
    std::vector<int> cutvertices;                   // sorted
    std::vector<std::vector<int>> blocks_of_vertex; // incidence
};

// Throws std::invalid_argument if g is disconnected.
BlockCutTree block_cut_tree(const RootedGraph &g);

bool is_biconnected_block(const RootedGraph &g); // K2 or 2-connected

} // namespace bslimits
