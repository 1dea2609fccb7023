#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bslimits/classes.hpp"
#include "bslimits/graph.hpp"
#include "bslimits/link.hpp"
#include "bslimits/trees.hpp"

namespace bslimits {

// Connected, and every block accepted by cls.contains_block.
bool is_class_member(const RootedGraph &g, const BlockClass &cls);

// All labelled members on {0..n-1} (rooted at 0), by filtering edge subsets
// of K_n. n <= 7.
std::vector<RootedGraph> all_class_members_labelled(int n, const BlockClass &cls);

// One rooted member per isomorphism type.
std::vector<RootedGraph> all_unlabelled_rooted_members(int n, const BlockClass &cls);

enum class FringeMode { rooted, unrooted };

// Number of fringe copies of H in G: pairs (x, Q) where Q is a component of
// G - x and G[Q + x], rooted at x, is isomorphic to H. The root of H must
// not be a cut vertex. In rooted mode the root of G may not lie in Q.
std::int64_t fringe_count(const RootedGraph &g, const RootedGraph &h, FringeMode mode);

// Whether the rooted graph g starts with the chain L_1..L_k at its root and
// the remainder has more vertices than the chain.
bool matches_chain(const RootedGraph &g, std::span<const Link> links, const BlockClass &cls);

// Chain events for trees, evaluated in linear time per root. All links must
// be bridges.
class TreeChainMatcher {
public:
    explicit TreeChainMatcher(std::span<const Link> links);

    int chain_size() const { return total_; }

    // Whether the chain matches t rooted at r.
    bool matches_at(const PruferTree &t, int r) const;
    // Number of roots r of t for which the chain matches (t, r).
    std::int64_t count_roots(const PruferTree &t) const;
    bool matches(const RootedGraph &tree) const;

private:
    struct Step {
        int size;
        std::string code; // AHU code of the source branch
    };
    std::vector<Step> steps_;
    int total_ = 0;

    void prepare(const PruferTree &t) const;
    bool walk(int n, int r) const;
    std::string code_without(int v, int ex1, int ex2) const;

    // Adjacency and subtree sizes of the last tree, reused across calls.
    mutable std::vector<int> start_, nbr_, sub_, parent_;
};

struct EventCount {
    std::uint64_t hits = 0;
    std::uint64_t total = 0;
    double fraction() const { return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total); }
};

// Over all n^(n-1) rooted labelled trees on n vertices (n <= 12). Relabelling
// shows the root may be fixed at vertex n-1, so total = n^(n-2). Work is
// split across `threads` (0: hardware concurrency).
std::vector<EventCount> chain_events_labelled_trees(int n, std::span<const TreeChainMatcher> matchers,
                                                    unsigned threads = 0);
EventCount chain_event_labelled_trees(int n, const TreeChainMatcher &m);

// Over all rooted unlabelled trees on n vertices, each type counted once.
EventCount chain_event_unlabelled_trees(int n, const TreeChainMatcher &m);

} // namespace bslimits
