#pragma once

// RCIS profiles and the pseudometric built from them.
//
// A rooted connected induced subgraph (RCIS) of G is a connected induced
// subgraph containing the root. The size-r profile of G is the set of
// isomorphism types of its RCIS on r vertices; r(G, H) is the largest r such
// that the profiles agree at every size s <= r, and d = 1 / r(G, H).
//
// Profile rules for the infinite constructors:
//   ray, path(n)    the end-rooted path P_r (path(n) only while r <= n + 1)
//   star(n)         K_{1,r-1} at the centre while r - 1 <= n; always for star(inf)
//   fan(n)          apex plus disjoint subpaths of total length r - 1, for
//                   every multiset of lengths with total + gaps <= n; any
//                   multiset for fan(inf)
//   join            joins of one RCIS per part, non-root sizes summing to r - 1
//   joinall(...)    joins of arbitrarily many RCIS drawn from members; every
//                   member is contained in a larger one, so members up to
//                   size 2r cover all pieces
//   rado            every connected rooted graph on r vertices

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bslimits/canonical.hpp"
#include "bslimits/family.hpp"
#include "bslimits/graph.hpp"

namespace bslimits {

inline constexpr int kDefaultRMax = 8;
inline constexpr int kProfileBound = 12;
inline constexpr int kRadoProfileBound = 6;

struct RcisProfile {
    int r = 0;
    std::vector<CanonicalCode> codes; // sorted, unique

    bool operator==(const RcisProfile &) const = default;
};

// Throws std::out_of_range for r < 1, r > kProfileBound, or r >
// kRadoProfileBound when the family involves the Rado graph. Results are
// memoised per (family, r); safe to call from several threads.
RcisProfile rcis_profile(const GraphFamily &f, int r);
RcisProfile rcis_profile(const RootedGraph &g, int r);

// Isomorphism types of connected rooted graphs on exactly r vertices.
const std::vector<CanonicalCode> &connected_rooted_graphs(int r);

struct Radius {
    int r = 0;
    bool at_least = false; // no disagreement up to r = r_max
    // agree[s - 1]: profiles agree at size s, for s = 1..r_max, including
    // sizes past the first disagreement.
    std::vector<bool> agree;

    // Agreement returns after a disagreement somewhere below r_max.
    bool non_monotone() const;
};

Radius radius_similarity(const GraphFamily &f, const GraphFamily &g, int r_max = kDefaultRMax);

struct Distance {
    double value = 0;
    bool upper_bound = false; // value is 1 / r_max and the true distance may be smaller
};

Distance d_value(const GraphFamily &f, const GraphFamily &g, int r_max = kDefaultRMax);

// 1 / (rho + 1) for the largest rho <= r_max with B_rho(G) and B_rho(H)
// isomorphic as rooted graphs.
Distance d_neighbourhood(const RootedGraph &g, const RootedGraph &h, int r_max = kDefaultRMax);
int ball_agreement_radius(const RootedGraph &g, const RootedGraph &h, int r_max = kDefaultRMax);

struct BallCensus {
    int k = 0;
    // Input indices grouped by equal profiles at sizes 1..k, in order of
    // first appearance.
    std::vector<std::vector<int>> parts;
    std::size_t types = 0; // |K|: connected rooted graphs on at most k vertices
    bool within_bound() const;
};

BallCensus ball_census(std::span<const GraphFamily> graphs, int k);

// A finite graph in which each marked vertex stands for a vertex of infinite
// degree (infinitely many extra pendant neighbours).
struct OmegaMarkedGraph {
    RootedGraph base;
    std::vector<int> marked;
};

struct UndefinedGroundFloor : std::domain_error {
    using std::domain_error::domain_error;
};

struct Core {
    RootedGraph graph;            // induced on ground + first, rooted at the original root
    std::vector<int> vertices;    // base vertex of each core vertex
    std::vector<bool> infinite;   // core vertex lies in the first floor
    std::vector<int> ground;      // base vertices, sorted
    std::vector<int> first;       // base vertices, sorted
};

// Ground floor: component of the root after deleting the marked vertices.
// First floor: marked vertices adjacent to the ground floor. Throws
// UndefinedGroundFloor when the root is marked.
Core core(const OmegaMarkedGraph &g);

} // namespace bslimits
