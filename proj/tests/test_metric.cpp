#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bslimits/canonical.hpp"
#include "bslimits/family.hpp"
#include "bslimits/graph_io.hpp"
#include "bslimits/metric.hpp"
#include "bslimits/trees.hpp"
#include "support.hpp"

using namespace bslimits;
using bslimits::testing::random_connected;

namespace {

GraphFamily copies(const GraphFamily &f, int k) { return GraphFamily::join(std::vector<GraphFamily>(k, f)); }

// Connected rooted graphs on r vertices from all edge subsets of K_r.
std::size_t brute_connected_rooted(int r) {
    std::vector<Edge> all;
    for (int u = 0; u < r; ++u) {
        for (int v = u + 1; v < r; ++v) {
            all.push_back({u, v});
        }
    }
    std::set<CanonicalCode> codes;
    for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
        RootedGraph g(r, 0);
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (mask >> i & 1u) {
                g.add_edge(all[i].first, all[i].second);
            }
        }
        if (is_connected(g)) {
            for (int root = 0; root < r; ++root) {
                g.set_root(root);
                codes.insert(canonical_rooted(g));
            }
        }
    }
    return codes.size();
}

} // namespace

TEST(Parser, RoundTripsAndNormalises) {
    for (const char *text : {"path(5)", "ray", "star(inf)", "star(3)", "fan(7)", "fan(inf)", "join(ray, star(3))",
                             "joinall(paths)", "joinall(fans)", "rado", "join(rado, rado)",
                             "graph(3; 0-1, 1-2)"}) {
        const auto f = parse_family(text);
        EXPECT_EQ(parse_family(f.to_string()).to_string(), f.to_string()) << text;
    }
    EXPECT_EQ(parse_family("  join ( ray ,star( 3 ) ) ").to_string(), "join(ray, star(3))");
    EXPECT_EQ(parse_family("cycle(4)").kind, GraphFamily::Kind::finite);
}

TEST(Parser, ErrorsCarryPositions) {
    auto position = [](const char *text) -> std::size_t {
        try {
            parse_family(text);
        } catch (const FamilyParseError &e) {
            return e.position;
        }
        return std::string::npos;
    };
    EXPECT_EQ(position("join(ray, stur(3))"), 10u);
    EXPECT_EQ(position("path(x)"), 5u);
    EXPECT_EQ(position("star(3"), 6u);
    EXPECT_EQ(position("ray ray"), 4u);
    EXPECT_EQ(position("joinall(trees)"), 8u);
    EXPECT_EQ(position("graph(3; 0-3)"), 9u);
    EXPECT_EQ(position(""), 0u);
}

TEST(Profiles, SingleVertexAtSizeOne) {
    const auto dot = canonical_rooted(RootedGraph(1, 0));
    for (const char *text : {"path(0)", "ray", "star(inf)", "fan(3)", "joinall(fans)", "rado", "complete(4)"}) {
        const auto p = rcis_profile(parse_family(text), 1);
        ASSERT_EQ(p.codes.size(), 1u) << text;
        EXPECT_EQ(p.codes[0], dot);
    }
}

TEST(Profiles, InfiniteStarAndRado) {
    const auto star = rcis_profile(GraphFamily::star_inf(), 4);
    ASSERT_EQ(star.codes.size(), 1u);
    EXPECT_EQ(star.codes[0], canonical_rooted(star_graph(3)));
    EXPECT_EQ(rcis_profile(GraphFamily::rado(), 3).codes.size(), 3u);
    EXPECT_THROW(rcis_profile(GraphFamily::rado(), 7), std::out_of_range);
    EXPECT_THROW(rcis_profile(GraphFamily::ray(), 0), std::out_of_range);
}

TEST(Profiles, ConnectedRootedGraphCounts) {
    for (int r = 1; r <= 5; ++r) {
        EXPECT_EQ(connected_rooted_graphs(r).size(), brute_connected_rooted(r)) << r;
    }
    EXPECT_EQ(connected_rooted_graphs(6).size(), 407u);
    EXPECT_EQ(connected_rooted_graphs(7).size(), 4306u);
}

TEST(Profiles, ClosedRulesMatchMaterialisedGraphs) {
    for (int n = 0; n <= 7; ++n) {
        for (const auto &f : {GraphFamily::path(n), GraphFamily::star(n), GraphFamily::fan(n)}) {
            const auto g = f.materialise();
            for (int r = 1; r <= 8; ++r) {
                ASSERT_EQ(rcis_profile(f, r), rcis_profile(g, r)) << f.to_string() << " r=" << r;
            }
        }
    }
    const auto j = parse_family("join(fan(4), path(2), star(2))");
    for (int r = 1; r <= 8; ++r) {
        ASSERT_EQ(rcis_profile(j, r), rcis_profile(j.materialise(), r)) << r;
    }
}

TEST(Profiles, InfiniteFamiliesMatchLargeFiniteStandIns) {
    for (int r = 1; r <= 5; ++r) {
        // r copies of a long member realise every RCIS on r vertices.
        EXPECT_EQ(rcis_profile(GraphFamily::join_all_paths(), r),
                  rcis_profile(copies(GraphFamily::path(r), r).materialise(), r))
            << r;
        EXPECT_EQ(rcis_profile(GraphFamily::join_all_fans(), r),
                  rcis_profile(copies(GraphFamily::fan(2 * r), r).materialise(), r))
            << r;
        EXPECT_EQ(rcis_profile(GraphFamily::ray(), r), rcis_profile(GraphFamily::path(r), r));
        EXPECT_EQ(rcis_profile(GraphFamily::fan_inf(), r), rcis_profile(GraphFamily::fan(2 * r), r));
    }
    // The Rado graph contains every finite graph, e.g. K_5 and C_5.
    for (int r = 1; r <= 5; ++r) {
        const auto p = rcis_profile(GraphFamily::rado(), r);
        EXPECT_TRUE(std::binary_search(p.codes.begin(), p.codes.end(), canonical_rooted(complete_graph(r))));
    }
}

TEST(Radius, StarsConvergeToInfiniteStar) {
    for (int n = 1; n <= 7; ++n) {
        const auto rad = radius_similarity(GraphFamily::star(n), GraphFamily::star_inf(), 8);
        EXPECT_EQ(rad.r, n + 1) << n;
        EXPECT_EQ(rad.at_least, n + 1 == 8);
    }
    const auto d = d_value(GraphFamily::star(3), GraphFamily::star_inf());
    EXPECT_DOUBLE_EQ(d.value, 0.25);
    EXPECT_FALSE(d.upper_bound);
}

TEST(Radius, ZeroDistanceWitnesses) {
    const auto a = radius_similarity(parse_family("joinall(paths)"), parse_family("join(joinall(paths), ray)"), 8);
    EXPECT_TRUE(a.at_least);
    const auto b = radius_similarity(parse_family("joinall(fans)"), parse_family("fan(inf)"), 8);
    EXPECT_TRUE(b.at_least);
    const auto c = radius_similarity(parse_family("rado"), parse_family("join(rado, rado)"), 6);
    EXPECT_TRUE(c.at_least);
    const auto self = d_value(parse_family("fan(5)"), parse_family("fan(5)"));
    EXPECT_TRUE(self.upper_bound);
    EXPECT_DOUBLE_EQ(self.value, 1.0 / kDefaultRMax);
}

TEST(Radius, PathsApproachTheRay) {
    for (int n = 1; n <= 6; ++n) {
        EXPECT_EQ(radius_similarity(GraphFamily::path(n), GraphFamily::ray(), 8).r, n + 1);
        const auto g = path_graph(n + 1, 0);
        const auto h = path_graph(n + 2, 0);
        EXPECT_DOUBLE_EQ(d_neighbourhood(g, h).value, 1.0 / (n + 1));
    }
}

TEST(RadiusProperty, UltrametricOnRandomCorpus) {
    std::mt19937_64 rng(31);
    std::vector<GraphFamily> corpus;
    for (const char *text : {"ray", "star(inf)", "fan(inf)", "joinall(paths)", "joinall(fans)", "path(3)", "star(4)",
                             "fan(4)", "join(ray, ray)", "join(star(2), fan(3))"}) {
        corpus.push_back(parse_family(text));
    }
    while (corpus.size() < 60) {
        const int n = std::uniform_int_distribution<int>(2, 8)(rng);
        corpus.push_back(GraphFamily::finite(random_connected(rng, n, 0.4)));
    }
    const int rmax = 6;
    const std::size_t m = corpus.size();
    std::vector<std::vector<int>> r(m, std::vector<int>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            r[i][j] = radius_similarity(corpus[i], corpus[j], rmax).r;
        }
        EXPECT_EQ(r[i][i], rmax);
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            ASSERT_EQ(r[i][j], r[j][i]);
            for (std::size_t k = 0; k < m; ++k) {
                ASSERT_GE(r[i][k], std::min(r[i][j], r[j][k]));
            }
        }
    }
}

TEST(RadiusProperty, FiniteGraphsSeparateByTheirSize) {
    std::mt19937_64 rng(32);
    int checked = 0;
    while (checked < 150) {
        const auto g = random_connected(rng, std::uniform_int_distribution<int>(1, 7)(rng), 0.45);
        const auto h = random_connected(rng, std::uniform_int_distribution<int>(1, 7)(rng), 0.45);
        if (g.size() == h.size() && canonical_rooted(g) == canonical_rooted(h)) {
            continue;
        }
        const int bound = std::max(g.size(), h.size());
        const auto rad = radius_similarity(GraphFamily::finite(g), GraphFamily::finite(h), bound);
        ASSERT_FALSE(rad.at_least) << format_graph(g) << " vs " << format_graph(h);
        ASSERT_LT(rad.r, bound);
        ++checked;
    }
}

TEST(RadiusProperty, BallAgreementImpliesProfileAgreement) {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = std::uniform_int_distribution<int>(4, 10)(rng);
        const RootedGraph g = random_connected(rng, n, 0.3);
        // h: g plus a pendant vertex at a random vertex.
        RootedGraph h = g;
        const int at = std::uniform_int_distribution<int>(0, n - 1)(rng);
        h.add_edge(at, h.add_vertex());
        const int rho = ball_agreement_radius(g, h, 8);
        const auto rad = radius_similarity(GraphFamily::finite(g), GraphFamily::finite(h), 9);
        ASSERT_GE(rad.r, rho + 1) << format_graph(g);
        ASSERT_LE(d_value(GraphFamily::finite(g), GraphFamily::finite(h), 9).value,
                  d_neighbourhood(g, h, 8).value + 1e-15);
    }
}

TEST(Census, RootedTreesOnSixVertices) {
    std::vector<GraphFamily> trees;
    for (const auto &t : all_unlabelled_rooted_trees(6)) {
        trees.push_back(GraphFamily::finite(t));
    }
    ASSERT_EQ(trees.size(), 20u);
    const std::vector<std::size_t> types{1, 2, 5, 16};
    // Sizes 1 and 2 never separate rooted trees; size 3 tells whether the
    // root has two children, a grandchild, or both.
    const std::vector<std::size_t> parts{1, 1, 3};
    for (int k = 1; k <= 4; ++k) {
        const auto c = ball_census(trees, k);
        EXPECT_EQ(c.types, types[k - 1]);
        EXPECT_TRUE(c.within_bound());
        if (k <= 3) {
            EXPECT_EQ(c.parts.size(), parts[k - 1]) << k;
        }
        std::size_t total = 0;
        for (const auto &p : c.parts) {
            total += p.size();
        }
        EXPECT_EQ(total, trees.size());
    }
}

TEST(Census, PartsRespectTheBallBoundOnRandomGraphs) {
    std::mt19937_64 rng(34);
    std::vector<GraphFamily> gs;
    for (int i = 0; i < 150; ++i) {
        gs.push_back(GraphFamily::finite(random_connected(rng, 2 + i % 7, 0.5)));
    }
    for (int k = 1; k <= 3; ++k) {
        const auto c = ball_census(gs, k);
        EXPECT_LE(c.parts.size(), std::size_t{1} << c.types) << k;
    }
}

TEST(Core, UnmarkedGraphIsItsOwnCore) {
    const auto g = cycle_graph(5, 2);
    const auto c = core({g, {}});
    EXPECT_EQ(canonical_rooted(c.graph), canonical_rooted(g));
    EXPECT_TRUE(c.first.empty());
    EXPECT_EQ(c.ground.size(), 5u);
}

TEST(Core, MarkedPathEnd) {
    // a-b-c rooted at a, c marked.
    const auto c = core({path_graph(3, 0), {2}});
    EXPECT_EQ(c.ground, (std::vector<int>{0, 1}));
    EXPECT_EQ(c.first, (std::vector<int>{2}));
    EXPECT_EQ(canonical_rooted(c.graph), canonical_rooted(path_graph(3, 0)));
    EXPECT_EQ(c.infinite, (std::vector<bool>{false, false, true}));
}

TEST(Core, MarkedStarCentre) {
    // Centre 0 with leaves 1 (root) and 2; centre marked.
    RootedGraph g = star_graph(2);
    g.set_root(1);
    const auto c = core({g, {0}});
    EXPECT_EQ(c.ground, (std::vector<int>{1}));
    EXPECT_EQ(c.first, (std::vector<int>{0}));
    EXPECT_EQ(c.graph.size(), 2);
    EXPECT_EQ(c.vertices, (std::vector<int>{1, 0}));
}

TEST(Core, MarkedRootIsRejected) {
    EXPECT_THROW(core({path_graph(3, 0), {0}}), UndefinedGroundFloor);
    EXPECT_THROW(core({path_graph(3, 0), {5}}), std::invalid_argument);
}
