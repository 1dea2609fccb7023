#pragma once

// Canonical forms and automorphism data for small rooted, vertex-coloured
// graphs: colour refinement to an equitable partition, then backtracking
// over individualisations of the first non-singleton cell (twin vertices
// are tried once per twin class).

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bslimits/graph.hpp"

namespace bslimits {

inline constexpr int kCanonicalBound = 64;

struct CanonicalCode {
    std::vector<std::uint64_t> words;

    auto operator<=>(const CanonicalCode &) const = default;
    bool operator==(const CanonicalCode &) const = default;

    std::string hex() const;
};

struct CanonicalCodeHash {
    std::size_t operator()(const CanonicalCode &c) const noexcept;
};

struct CanonicalForm {
    CanonicalCode code;
    // order[i] = original vertex placed at canonical position i.
    std::vector<int> order;
};

// Canonical form of g with the root distinguished. `colors` (optional, one
// entry per vertex) further restricts isomorphisms to colour-preserving maps.
// Throws std::length_error when g.size() exceeds `bound`.
CanonicalForm canonical_form(const RootedGraph &g, std::span<const int> colors = {},
                             int bound = kCanonicalBound);

inline CanonicalCode canonical_rooted(const RootedGraph &g, std::span<const int> colors = {},
                                      int bound = kCanonicalBound) {
    return canonical_form(g, colors, bound).code;
}

// Isomorphism-invariant code of the underlying unrooted graph: the least
// rooted code over all choices of root.
CanonicalCode canonical_unrooted(const RootedGraph &g);

// Rebuilds a graph (rooted at canonical position of the root) from a code.
RootedGraph decode_canonical(const CanonicalCode &code);

// Orbits of the colour- and root-preserving automorphism group.
// Result[v] is the smallest vertex in v's orbit.
std::vector<int> automorphism_orbits(const RootedGraph &g, std::span<const int> colors = {});

// |Aut| of the coloured rooted graph, via a stabiliser chain.
std::uint64_t automorphism_count(const RootedGraph &g, std::span<const int> colors = {});

// All colour- and root-preserving automorphisms as vertex maps. Exhaustive
// backtracking; intended for small blocks (at most ~10 vertices).
std::vector<std::vector<int>> all_automorphisms(const RootedGraph &g,
                                                std::span<const int> colors = {});

} // namespace bslimits
