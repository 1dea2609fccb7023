#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "bslimits/blocks.hpp"
#include "bslimits/canonical.hpp"
#include "bslimits/graph.hpp"
#include "bslimits/graph_io.hpp"
#include "bslimits/trees.hpp"

using namespace bslimits;

namespace {

RootedGraph random_graph(std::mt19937_64 &rng, int n, double p) {
    std::bernoulli_distribution coin(p);
    RootedGraph g(n, std::uniform_int_distribution<int>(0, n - 1)(rng));
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (coin(rng)) {
                g.add_edge(u, v);
            }
        }
    }
    return g;
}

RootedGraph permuted(const RootedGraph &g, const std::vector<int> &perm) {
    RootedGraph h(g.size(), perm[g.root()]);
    for (auto [u, v] : g.edges()) {
        h.add_edge(perm[u], perm[v]);
    }
    return h;
}

// Root-preserving isomorphism by trying every permutation.
bool brute_isomorphic(const RootedGraph &a, const RootedGraph &b) {
    if (a.size() != b.size() || a.edge_count() != b.edge_count()) {
        return false;
    }
    std::vector<int> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (perm[a.root()] != b.root()) {
            continue;
        }
        bool ok = true;
        for (auto [u, v] : a.edges()) {
            if (!b.has_edge(perm[u], perm[v])) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::uint64_t brute_automorphisms(const RootedGraph &g) {
    std::vector<int> perm(g.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t count = 0;
    do {
        if (perm[g.root()] != g.root()) {
            continue;
        }
        bool ok = true;
        for (auto [u, v] : g.edges()) {
            ok = ok && g.has_edge(perm[u], perm[v]);
        }
        count += ok ? 1 : 0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

} // namespace

TEST(Graph, RejectsLoopsAndDuplicates) {
    RootedGraph g(3);
    g.add_edge(0, 1);
    EXPECT_THROW(g.add_edge(1, 0), std::invalid_argument);
    EXPECT_THROW(g.add_edge(2, 2), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 3), std::invalid_argument);
}

TEST(Graph, BallAndJoin) {
    const RootedGraph p = path_graph(6, 0);
    EXPECT_EQ(ball(p, 2).size(), 3);
    EXPECT_EQ(ball(p, 10).size(), 6);
    const std::vector<RootedGraph> parts{path_graph(3, 0), star_graph(2)};
    const RootedGraph j = join(parts);
    EXPECT_EQ(j.size(), 5);
    EXPECT_EQ(j.degree(j.root()), 3);
}

TEST(Canonical, EndAndMiddleOfP3Differ) {
    EXPECT_NE(canonical_rooted(path_graph(3, 0)), canonical_rooted(path_graph(3, 1)));
    EXPECT_EQ(canonical_rooted(path_graph(3, 0)), canonical_rooted(path_graph(3, 2)));
}

TEST(Canonical, RootedTreesOnFiveVertices) {
    std::set<CanonicalCode> codes;
    for (const auto &t : all_labelled_trees(5)) {
        for (int r = 0; r < 5; ++r) {
            RootedGraph g = t;
            g.set_root(r);
            codes.insert(canonical_rooted(g));
        }
    }
    EXPECT_EQ(codes.size(), 9u);
}

TEST(CanonicalProperty, InvariantUnderRelabelling) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 11;
        const RootedGraph g = random_graph(rng, n, 0.35);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        ASSERT_EQ(canonical_rooted(g), canonical_rooted(permuted(g, perm))) << format_graph(g);
    }
}

TEST(CanonicalProperty, AgreesWithBruteForceIsomorphism) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 300; ++trial) {
        const RootedGraph a = random_graph(rng, 5, 0.5);
        const RootedGraph b = random_graph(rng, 5, 0.5);
        ASSERT_EQ(canonical_rooted(a) == canonical_rooted(b), brute_isomorphic(a, b))
            << format_graph(a) << " vs " << format_graph(b);
    }
}

TEST(CanonicalProperty, DecodeRoundTrips) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const RootedGraph g = random_graph(rng, 3 + trial % 8, 0.4);
        const auto code = canonical_rooted(g);
        EXPECT_EQ(canonical_rooted(decode_canonical(code)), code);
    }
}

TEST(Automorphisms, CountsAgreeWithBruteForce) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 100; ++trial) {
        const RootedGraph g = random_graph(rng, 6, trial % 2 ? 0.3 : 0.7);
        const auto expected = brute_automorphisms(g);
        EXPECT_EQ(automorphism_count(g), expected) << format_graph(g);
        EXPECT_EQ(all_automorphisms(g).size(), expected);
    }
    EXPECT_EQ(automorphism_count(complete_graph(7)), 720u);
    EXPECT_EQ(automorphism_count(star_graph(5)), 120u);
}

TEST(Blocks, CutVerticesOfTwoTrianglesAndAPendant) {
    // Triangles 0-1-2 and 2-3-4 sharing 2, pendant 5 at 4.
    const std::vector<Edge> edges{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}, {4, 5}};
    const auto g = RootedGraph::from_edges(6, edges);
    const auto bct = block_cut_tree(g);
    EXPECT_EQ(bct.blocks.size(), 3u);
    EXPECT_EQ(bct.cutvertices, (std::vector<int>{2, 4}));
    EXPECT_TRUE(is_biconnected_block(cycle_graph(5)));
    EXPECT_TRUE(is_biconnected_block(path_graph(2)));
    EXPECT_FALSE(is_biconnected_block(path_graph(3)));
}

TEST(GraphIo, JsonAndJsonLinesRoundTrip) {
    std::mt19937_64 rng(25);
    std::vector<RootedGraph> gs;
    for (int i = 0; i < 10; ++i) {
        gs.push_back(random_graph(rng, 1 + i, 0.4));
    }
    std::stringstream ss;
    write_graph_lines(ss, gs);
    const auto back = read_graph_lines(ss);
    ASSERT_EQ(back.size(), gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i) {
        EXPECT_EQ(back[i], gs[i]);
        EXPECT_EQ(parse_graph(format_graph(gs[i])), gs[i]);
    }
    EXPECT_THROW(parse_graph(R"({"n": 2, "root": 0, "edges": [[0, 2]]})"), std::invalid_argument);
}

TEST(Trees, PruferCountsAndDecoding) {
    int count = 0;
    for_each_labelled_tree(6, [&](const PruferTree &t) {
        ++count;
        EXPECT_TRUE(is_connected(t.graph(0)));
        EXPECT_EQ(t.graph(0).edge_count(), 5u);
    });
    EXPECT_EQ(count, 1296);
    std::set<std::vector<Edge>> distinct;
    for (const auto &t : all_labelled_trees(5)) {
        auto e = t.edges();
        for (auto &[u, v] : e) {
            if (u > v) {
                std::swap(u, v);
            }
        }
        std::sort(e.begin(), e.end());
        distinct.insert(e);
    }
    EXPECT_EQ(distinct.size(), 125u);
}

TEST(Trees, RootedUnlabelledCounts) {
    const std::vector<std::size_t> otter{1, 1, 2, 4, 9, 20, 48, 115, 286, 719, 1842};
    for (int n = 1; n <= 11; ++n) {
        std::size_t c = 0;
        for_each_level_sequence(n, [&](std::span<const int>) { ++c; });
        EXPECT_EQ(c, otter[n - 1]) << n;
    }
    std::set<CanonicalCode> codes;
    for (const auto &t : all_unlabelled_rooted_trees(7)) {
        codes.insert(canonical_rooted(t));
    }
    EXPECT_EQ(codes.size(), 48u);
}

TEST(Trees, LevelSequenceRoundTrip) {
    for (const auto &t : all_unlabelled_rooted_trees(8)) {
        const auto seq = canonical_level_sequence(t);
        EXPECT_EQ(canonical_rooted(tree_from_level_sequence(seq)), canonical_rooted(t));
    }
}
