#pragma once

// Isomorphism types of rooted class members and of 2-ended links, generated
// from the block decomposition rather than by canonical-form rejection.
//
// A rooted member is its root plus a multiset of block-branches; a
// block-branch is a derived block whose non-root vertices each carry a
// rooted member. Two assignments of members to the positions of a block
// give isomorphic structures iff they differ by a root-fixing automorphism
// of the block, so each orbit is kept once (its lexicographically least
// assignment). Automorphism counts follow from the same decomposition.

#include <cstdint>
#include <vector>

#include "bslimits/classes.hpp"
#include "bslimits/graph.hpp"

namespace bslimits {

class Catalogue {
public:
    struct BlockBranch {
        int derived = 0;         // index into derived()
        std::vector<int> branch; // member per non-root block vertex, in vertex order
        int size = 0;            // non-root vertices in total
        std::uint64_t aut = 1;   // root-fixing automorphisms
    };

    struct Member {
        std::vector<int> parts; // block-branch indices, nondecreasing
        int size = 1;           // vertices including the root
        std::uint64_t aut = 1;
    };

    struct LinkShape {
        int derived = 0; // block, rooted at the sink
        int source = 0;  // block vertex
        std::vector<int> branch;
        int size = 0;          // |L|: vertices other than the sink
        std::uint64_t aut = 1; // automorphisms fixing source and sink
    };

    // Members with at most max_size vertices. Requires a block generator with
    // listed stabilisers.
    Catalogue(const BlockClass &cls, int max_size);

    int max_size() const { return max_size_; }
    const std::vector<DerivedBlock> &derived() const { return derived_; }
    const std::vector<Member> &members() const { return members_; }
    const std::vector<BlockBranch> &block_branches() const { return branches_; }

    // Indices of members with exactly n vertices (contiguous range).
    std::pair<int, int> members_of_size(int n) const;

    RootedGraph member_graph(int index) const;

    // All link shapes with |L| <= max_link (at most max_size), by size.
    std::vector<LinkShape> links(int max_link) const;

    struct LinkGraph {
        RootedGraph graph; // rooted at the source
        int source = 0;
        int sink = 0;
        std::vector<int> block; // block vertices
    };
    LinkGraph link_graph(const LinkShape &shape) const;

private:
    // Calls emit(assignment, stabiliser size) for orbit representatives of
    // member assignments to `positions` with sizes summing to `total`.
    template <class Emit>
    void assignments(const DerivedBlock &d, const std::vector<int> &positions,
                     const std::vector<std::vector<int>> &group, int total, Emit emit) const;

    void attach_member(RootedGraph &g, int at, int member) const;

    int max_size_;
    std::vector<DerivedBlock> derived_;
    std::vector<BlockBranch> branches_;
    std::vector<Member> members_;
    std::vector<int> member_start_; // member_start_[n] = first index of size n
};

} // namespace bslimits
