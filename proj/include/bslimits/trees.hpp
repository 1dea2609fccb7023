#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bslimits/graph.hpp"

namespace bslimits {

// A labelled tree on {0..n-1} as a parent array rooted at n-1, together with
// a bottom-up vertex order (every vertex appears before its parent).
struct PruferTree {
    int n = 0;
    std::vector<int> parent; // parent[n-1] = -1
    std::vector<int> order;  // all vertices except n-1, leaves first

    RootedGraph graph(int root) const;
};

// Decodes a Pruefer sequence of length n-2 (n >= 2) in linear time.
void prufer_decode(std::span<const int> code, PruferTree &out);

// Visits every labelled tree on n vertices (n^(n-2) of them), 1 <= n <= 12.
void for_each_labelled_tree(int n, const std::function<void(const PruferTree &)> &visit);

// Labelled trees rooted at vertex 0 (callers re-root as needed).
std::vector<RootedGraph> all_labelled_trees(int n);

// Uniform labelled tree on n vertices from a uniform Pruefer sequence.
PruferTree random_labelled_tree(int n, std::mt19937_64 &rng);

// Rooted unlabelled trees, one per isomorphism class, from the successor rule
// on canonical level sequences (root level 1). 1 <= n <= 18.
void for_each_level_sequence(int n, const std::function<void(std::span<const int>)> &visit);
std::vector<RootedGraph> all_unlabelled_rooted_trees(int n);

RootedGraph tree_from_level_sequence(std::span<const int> levels);

// Lexicographically largest level sequence of a rooted tree.
std::vector<int> canonical_level_sequence(const RootedGraph &tree);

// Free (unrooted) trees, one per isomorphism class, each rooted at a centroid.
std::vector<RootedGraph> all_free_trees(int n);

// Parenthesis code of the subtree of `v` when entered from `from`
// (-1: the whole tree rooted at v). Equal codes iff rooted-isomorphic.
std::string ahu_code(const RootedGraph &tree, int v, int from = -1);

// Isomorphism invariant of an unrooted tree.
std::string free_tree_code(const RootedGraph &tree);

bool is_tree(const RootedGraph &g);

} // namespace bslimits
