#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "bslimits/blocks.hpp"
#include "bslimits/canonical.hpp"
#include "bslimits/classes.hpp"
#include "bslimits/enumerate.hpp"
#include "bslimits/solve.hpp"

using namespace bslimits;

namespace {

Rational factorial(int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return Rational(f);
}

bool is_cactus(const RootedGraph &g) {
    const auto bct = block_cut_tree(g);
    for (const auto &b : bct.blocks) {
        std::size_t edges = 0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            for (std::size_t j = i + 1; j < b.size(); ++j) {
                edges += g.has_edge(b[i], b[j]) ? 1 : 0;
            }
        }
        // A 2-connected block with as many edges as vertices is a cycle.
        if (b.size() > 2 && edges != b.size()) {
            return false;
        }
    }
    return true;
}

// Rooted unlabelled cacti on n vertices from all edge subsets of K_n.
std::size_t brute_rooted_cacti(int n) {
    std::vector<Edge> all;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            all.push_back({u, v});
        }
    }
    std::set<CanonicalCode> codes;
    for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
        if (std::popcount(mask) < n - 1) {
            continue;
        }
        RootedGraph g(n, 0);
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (mask >> i & 1u) {
                g.add_edge(all[i].first, all[i].second);
            }
        }
        if (!is_connected(g) || !is_cactus(g)) {
            continue;
        }
        for (int r = 0; r < n; ++r) {
            g.set_root(r);
            codes.insert(canonical_rooted(g));
        }
    }
    return codes.size();
}

// Singular system for B'(y) = y + y^2 / (2 (1 - y)) (labelled cacti) by
// bisection on y B''(y) = 1.
std::pair<double, double> cactus_singularity() {
    auto bp = [](double y) { return y + y * y / (2 * (1 - y)); };
    auto bpp = [](double y) { return 1 + (2 * y - y * y) / (2 * (1 - y) * (1 - y)); };
    double lo = 0, hi = 0.999;
    for (int i = 0; i < 200; ++i) {
        const double mid = (lo + hi) / 2;
        (mid * bpp(mid) < 1 ? lo : hi) = mid;
    }
    return {lo * std::exp(-bp(lo)), lo};
}

} // namespace

TEST(Classes, BuiltinNames) {
    const auto names = builtin_names();
    for (const char *n : {"trees_labelled", "cacti_labelled", "blockgraphs_labelled", "trees_unlabelled",
                          "cacti_unlabelled"}) {
        EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
    }
    EXPECT_THROW(builtin("trees"), std::invalid_argument);
}

TEST(Solve, LabelledTreesCayley) {
    const auto c = solve_class(builtin("trees_labelled"), 15);
    for (int n = 1; n <= 15; ++n) {
        mpz_class nn;
        mpz_pow_ui(nn.get_mpz_t(), mpz_class(n).get_mpz_t(), static_cast<unsigned long>(n - 1));
        EXPECT_EQ(c[n], Rational(nn) / factorial(n)) << n;
    }
}

TEST(Solve, UnlabelledTreesOtter) {
    const std::vector<long> otter{0, 1, 1, 2, 4, 9, 20, 48, 115, 286, 719, 1842, 4766, 12486, 32973};
    const auto c = solve_class(builtin("trees_unlabelled"), 14);
    for (int n = 1; n <= 14; ++n) {
        EXPECT_EQ(c[n], otter[n]) << n;
    }
}

TEST(Solve, LabelledCactiMatchBruteForce) {
    const auto cls = builtin("cacti_labelled");
    const auto c = solve_class(cls, 6);
    for (int n = 1; n <= 6; ++n) {
        const auto members = all_class_members_labelled(n, cls);
        std::size_t cacti = 0;
        for (const auto &g : members) {
            cacti += is_cactus(g) ? 1 : 0;
        }
        EXPECT_EQ(cacti, members.size());
        EXPECT_EQ(c[n], Rational(static_cast<long>(n * members.size())) / factorial(n)) << n;
    }
}

TEST(Solve, UnlabelledCactiMatchBruteForce) {
    const auto c = solve_class(builtin("cacti_unlabelled"), 6);
    for (int n = 1; n <= 6; ++n) {
        EXPECT_EQ(c[n], static_cast<long>(brute_rooted_cacti(n))) << n;
    }
}

TEST(Solve, BlockGraphsLabelledMatchEnumeration) {
    const auto cls = builtin("blockgraphs_labelled");
    const auto c = solve_class(cls, 6);
    for (int n = 1; n <= 6; ++n) {
        const auto members = all_class_members_labelled(n, cls);
        for (const auto &g : members) {
            for (const auto &b : block_cut_tree(g).blocks) {
                for (std::size_t i = 0; i < b.size(); ++i) {
                    for (std::size_t j = i + 1; j < b.size(); ++j) {
                        ASSERT_TRUE(g.has_edge(b[i], b[j]));
                    }
                }
            }
        }
        EXPECT_EQ(c[n], Rational(static_cast<long>(n * members.size())) / factorial(n)) << n;
    }
}

TEST(Singularity, LabelledTreesClosedForm) {
    const auto s = find_singularity(builtin("trees_labelled"));
    EXPECT_NEAR(s.rho, std::exp(-1.0), 1e-12);
    EXPECT_NEAR(s.tau, 1.0, 1e-12);
    EXPECT_NEAR(s.b, std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(s.A, 1 / std::sqrt(2 * std::numbers::pi), 1e-9);
}

TEST(Singularity, UnlabelledTreesOtterConstant) {
    const auto s = find_singularity(builtin("trees_unlabelled"), 1e-12, 200);
    EXPECT_NEAR(s.rho, 0.3383218568992077, 1e-12);
    EXPECT_NEAR(s.tau, 1.0, 1e-9);
}

TEST(Singularity, LabelledCactiAgainstBisection) {
    const auto [rho, tau] = cactus_singularity();
    const auto s = find_singularity(builtin("cacti_labelled"));
    EXPECT_NEAR(s.rho, rho, 1e-10);
    EXPECT_NEAR(s.tau, tau, 1e-10);
}

TEST(Singularity, StableUnderTruncationOrder) {
    for (const char *name : {"cacti_labelled", "cacti_unlabelled", "trees_unlabelled"}) {
        const auto cls = builtin(name);
        const auto a = find_singularity(cls, 1e-12, 120);
        const auto b = find_singularity(cls, 1e-12, 240);
        EXPECT_NEAR(a.rho, b.rho, 1e-8) << name;
        EXPECT_NEAR(a.A, b.A, 1e-6) << name;
    }
}

TEST(Asymptotics, FitMatchesSingularityData) {
    for (const char *name : {"trees_labelled", "cacti_labelled", "trees_unlabelled", "cacti_unlabelled"}) {
        const auto cls = builtin(name);
        const auto s = find_singularity(cls, 1e-12, 240);
        const auto f = solve_class_float(cls, 240, s.rho);
        EXPECT_NEAR(fit_asymptotics(f, 1.0) / s.A, 1.0, 1e-3) << name;
    }
}

TEST(Classes, CustomLabelledEqualsTrees) {
    const auto custom = custom_labelled({Rational(0), Rational(1)});
    const auto a = solve_class(custom, 10);
    const auto b = solve_class(builtin("trees_labelled"), 10);
    for (int n = 0; n <= 10; ++n) {
        EXPECT_EQ(a[n], b[n]);
    }
    EXPECT_THROW(custom_labelled({Rational(0), Rational(2)}), std::invalid_argument);
}

TEST(Classes, JsonBlockListMatchesBuiltin) {
    // K2 and triangles: cacti restricted to 3-cycles.
    const auto cls = load_class_json(R"({"kind": "unlabelled", "blocks": [
        {"n": 2, "root": 0, "edges": [[0, 1]]},
        {"n": 3, "root": 0, "edges": [[0, 1], [1, 2], [0, 2]]}]})");
    const auto c = solve_class(cls, 8);
    const auto members = all_unlabelled_rooted_members(6, cls);
    EXPECT_EQ(c[6], static_cast<long>(members.size()));
    for (const auto &g : members) {
        EXPECT_TRUE(is_cactus(g));
    }
    EXPECT_THROW(load_class_json(R"({"kind": "labelled"})"), std::invalid_argument);
}

TEST(CycleIndex, SymmetricGroupOnThree) {
    std::vector<std::vector<int>> s3{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    const auto z = CycleIndex::of_group(s3);
    EXPECT_EQ(z.total_weight(), 1);
    EXPECT_EQ(z.terms().at({3}), Rational(1, 6));
    EXPECT_EQ(z.terms().at({1, 1}), Rational(1, 2));
    EXPECT_EQ(z.terms().at({0, 0, 1}), Rational(1, 3));
}

TEST(Levels, FirstLevelIsTheClass) {
    for (const char *name : {"trees_labelled", "cacti_unlabelled"}) {
        const auto cls = builtin(name);
        const auto t1 = level_series(cls, 1, 10);
        const auto c = solve_class(cls, 10);
        for (int n = 0; n <= 10; ++n) {
            EXPECT_EQ(t1[n], c[n]) << name << " " << n;
        }
    }
}

TEST(Levels, LabelledTreesSecondLevelCountsRootAndNeighbours) {
    // Weight of a rooted tree in T^(2): 1 + deg(root).
    const auto t2 = level_series(builtin("trees_labelled"), 2, 6);
    for (int n = 2; n <= 6; ++n) {
        long total = 0;
        for (const auto &g : all_class_members_labelled(n, builtin("trees_labelled"))) {
            total += 1 + g.degree(g.root());
        }
        // Members are rooted at vertex 0; every root is equivalent by symmetry.
        EXPECT_EQ(t2[n], Rational(total * n) / factorial(n)) << n;
    }
}
