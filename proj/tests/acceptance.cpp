// Runs the acceptance criteria and prints one line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "bslimits/canonical.hpp"
#include "bslimits/enumerate.hpp"
#include "bslimits/family.hpp"
#include "bslimits/limits.hpp"
#include "bslimits/metric.hpp"
#include "bslimits/solve.hpp"
#include "bslimits/trees.hpp"
#include "support.hpp"

using namespace bslimits;
using bslimits::testing::random_connected;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string &what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char *f, double a, double b = 0, double c = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

int failures = 0;

void run(int id, double budget_s, const std::function<Outcome()> &body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception &e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs < budget_s, fmt("runtime %.1fs over budget %.0fs", secs, budget_s));
    failures += o.pass ? 0 : 1;
    std::printf("criterion %d: %s (%.2fs) %s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
}

Outcome singularity_constants() {
    Outcome o;
    const auto s = find_singularity(builtin("trees_labelled"));
    o.check(std::abs(s.rho - std::exp(-1.0)) < 1e-9, fmt("rho = %.12f", s.rho));
    o.check(std::abs(s.tau - 1.0) < 1e-9, fmt("tau = %.12f", s.tau));
    o.note(fmt("rho = %.12f, tau = %.12f", s.rho, s.tau));
    return o;
}

Outcome rooted_leaf_probability() {
    Outcome o;
    const auto cls = builtin("trees_unlabelled");
    const auto s = find_singularity(cls, 1e-12, 200);
    const auto leaf = enumerate_links(cls, 1);
    const double q = q_link(leaf.at(0), s);
    o.check(std::abs(q - 0.338322) < 1e-5, fmt("q = %.8f", q));
    o.check(s.truncation_order >= 200, fmt("order %.0f", s.truncation_order));
    o.note(fmt("q(leaf) = %.8f at order %.0f", q, s.truncation_order));
    return o;
}

double mean_leaf_fraction(int n) {
    double total = 0;
    const auto trees = all_free_trees(n);
    for (const auto &t : trees) {
        int leaves = 0;
        for (int v = 0; v < t.size(); ++v) {
            leaves += t.degree(v) == 1 ? 1 : 0;
        }
        total += static_cast<double>(leaves) / n;
    }
    return total / static_cast<double>(trees.size());
}

Outcome bs_leaf_probability() {
    Outcome o;
    const auto cls = builtin("trees_unlabelled");
    const auto est = mu_fringe_unlabelled(path_graph(2, 0), cls, 200);
    o.check(std::abs(est.value - 0.438156) < 1e-3, fmt("series %.6f", est.value));
    // Least-squares line a + b/n through n = 14..16.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n = 14; n <= 16; ++n) {
        const double x = 1.0 / n, y = mean_leaf_fraction(n);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
    const double a = (sy - slope * sx) / 3;
    o.check(std::abs(a - est.value) < 2e-3, fmt("exhaustive extrapolation %.6f differs by %.4f", a,
                                                 std::abs(a - est.value)));
    o.note(fmt("series %.6f, exhaustive n=14..16 linear-in-1/n %.6f", est.value, a));
    return o;
}

Outcome asymptotic_constants() {
    Outcome o;
    const auto trees = builtin("trees_labelled");
    const auto st = find_singularity(trees, 1e-12, 240);
    const double a_trees = fit_asymptotics(solve_class_float(trees, 240, st.rho), 1.0, 1e-2);
    const double expected = 1 / std::sqrt(2 * std::numbers::pi);
    o.check(std::abs(a_trees / expected - 1) < 0.01, fmt("trees A = %.6f", a_trees));
    const auto cacti = builtin("cacti_labelled");
    const auto sc = find_singularity(cacti, 1e-12, 240);
    const double a_cacti = fit_asymptotics(solve_class_float(cacti, 240, sc.rho), 1.0, 1e-2);
    o.check(std::abs(a_cacti / sc.A - 1) < 0.01, fmt("cacti fit %.6f vs %.6f", a_cacti, sc.A));
    o.note(fmt("trees A = %.6f (1/sqrt(2pi) = %.6f), cacti fit/A = %.6f", a_trees, expected, a_cacti / sc.A));
    return o;
}

Outcome chain_oracle() {
    Outcome o;
    const auto cls = builtin("trees_labelled");
    const auto sing = find_singularity(cls);
    const auto links = enumerate_links(cls, 2);
    const std::vector<std::vector<Link>> chains{{links.at(0)}, {links.at(1)}, {links.at(0), links.at(0)}};
    const char *names[] = {"[L1]", "[L2]", "[L1,L1]"};
    std::vector<TreeChainMatcher> ms;
    std::vector<double> limit;
    for (const auto &c : chains) {
        ms.emplace_back(c);
        limit.push_back(chain_probability(sing, c, ChainMode::labelled));
    }
    const int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto small = chain_events_labelled_trees(5, ms, threads);
    const auto large = chain_events_labelled_trees(10, ms, threads);
    for (std::size_t i = 0; i < chains.size(); ++i) {
        const double d5 = std::abs(static_cast<double>(small[i].hits) / static_cast<double>(small[i].total) - limit[i]);
        const double d10 =
            std::abs(static_cast<double>(large[i].hits) / static_cast<double>(large[i].total) - limit[i]);
        o.check(d10 < d5, std::string(names[i]) + " not monotone");
        o.check(d10 < 0.05, std::string(names[i]) + fmt(" |diff| at n=10 is %.4f >= 0.05", d10));
        o.note(std::string(names[i]) + fmt(" %.4f -> %.4f", d5, d10));
    }
    return o;
}

Outcome mass_identities() {
    Outcome o;
    for (const char *name : {"trees_labelled", "cacti_labelled", "trees_unlabelled"}) {
        const auto cls = builtin(name);
        const auto sing = find_singularity(cls);
        const auto mass = link_mass_by_size(cls, sing, 12);
        double s = 0;
        for (double m : mass) {
            o.check(m > 0, std::string(name) + " partial sums not strictly increasing");
            s += m;
        }
        o.check(s <= 1.0, std::string(name) + fmt(" S_12 = %.6f > 1", s));
    }
    const auto cls = builtin("trees_labelled");
    const auto sing = find_singularity(cls);
    const auto mass = link_mass_by_size(cls, sing, 100);
    double s = 0, worst = 0;
    for (int m = 1; m <= 100; ++m) {
        s += mass[m - 1];
        if (m >= 20) {
            const double ratio = (1 - s) / (4 * sing.A / std::sqrt(m));
            worst = std::max(worst, ratio);
        }
    }
    o.check(worst <= 1.0, fmt("tail exceeds 4A/sqrt(M) by factor %.3f", worst));
    o.note(fmt("max (1 - S_M) / (4A/sqrt(M)) over M = 20..100: %.3f", worst));
    return o;
}

double leaf_fraction_sd(int n, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> degree(n);
    double sum = 0, sum2 = 0;
    for (int i = 0; i < samples; ++i) {
        const auto t = random_labelled_tree(n, rng);
        std::fill(degree.begin(), degree.end(), 0);
        for (int v = 0; v < n; ++v) {
            if (t.parent[v] >= 0) {
                ++degree[v];
                ++degree[t.parent[v]];
            }
        }
        const double f = static_cast<double>(std::count(degree.begin(), degree.end(), 1)) / n;
        sum += f;
        sum2 += f * f;
    }
    const double mean = sum / samples;
    return std::sqrt((sum2 - samples * mean * mean) / (samples - 1));
}

Outcome concentration() {
    Outcome o;
    const double a = leaf_fraction_sd(250, 10000, 7);
    const double b = leaf_fraction_sd(1000, 10000, 8);
    const double ratio = a / b;
    o.check(ratio >= 1.4 && ratio <= 2.8, fmt("sd ratio %.3f", ratio));
    o.note(fmt("sd %.5f -> %.5f, ratio %.3f", a, b, ratio));
    return o;
}

Outcome metric_suite() {
    Outcome o;
    std::mt19937_64 rng(8);
    int self_bad = 0;
    for (int i = 0; i < 100; ++i) {
        const auto g = GraphFamily::finite(random_connected(rng, std::uniform_int_distribution<int>(1, 9)(rng), 0.4));
        self_bad += d_value(g, g).value <= 1.0 / kDefaultRMax + 1e-15 ? 0 : 1;
    }
    o.check(self_bad == 0, fmt("%.0f graphs with d(G,G) > 1/r_max", self_bad));

    std::vector<GraphFamily> corpus;
    for (const char *text : {"ray", "star(inf)", "fan(inf)", "joinall(paths)", "joinall(fans)", "join(ray, ray)",
                             "star(5)", "fan(6)", "path(4)"}) {
        corpus.push_back(parse_family(text));
    }
    while (corpus.size() < 70) {
        corpus.push_back(GraphFamily::finite(random_connected(rng, std::uniform_int_distribution<int>(2, 8)(rng), 0.4)));
    }
    const std::size_t m = corpus.size();
    std::vector<std::vector<int>> r(m, std::vector<int>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            r[i][j] = r[j][i] = radius_similarity(corpus[i], corpus[j], 6).r;
        }
    }
    long triples = 0, violations = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k) {
                ++triples;
                violations += r[i][k] >= std::min(r[i][j], r[j][k]) ? 0 : 1;
            }
        }
    }
    o.check(violations == 0, fmt("%.0f ultrametric violations", violations));

    for (int n = 1; n <= 7; ++n) {
        const auto rad = radius_similarity(GraphFamily::star(n), GraphFamily::star_inf(), 8);
        o.check(rad.r == n + 1, fmt("r(Star(%.0f), StarInf) = %.0f", n, rad.r));
    }

    const struct {
        const char *a, *b;
        int r;
    } zero[] = {{"joinall(paths)", "join(joinall(paths), ray)", 8},
                {"joinall(fans)", "fan(inf)", 8},
                {"rado", "join(rado, rado)", 6}};
    for (const auto &z : zero) {
        const auto rad = radius_similarity(parse_family(z.a), parse_family(z.b), z.r);
        o.check(rad.at_least, std::string(z.a) + " vs " + z.b + " separate");
    }

    int pairs = 0, unseparated = 0;
    while (pairs < 100) {
        const auto g = random_connected(rng, std::uniform_int_distribution<int>(1, 7)(rng), 0.45);
        const auto h = random_connected(rng, std::uniform_int_distribution<int>(1, 7)(rng), 0.45);
        if (g.size() == h.size() && canonical_rooted(g) == canonical_rooted(h)) {
            continue;
        }
        ++pairs;
        const int bound = std::max(g.size(), h.size());
        unseparated += radius_similarity(GraphFamily::finite(g), GraphFamily::finite(h), bound).at_least ? 1 : 0;
    }
    o.check(unseparated == 0, fmt("%.0f finite pairs not separated", unseparated));
    o.note(fmt("%.0f triples, %.0f finite pairs", static_cast<double>(triples), pairs));
    return o;
}

Outcome ball_bound() {
    Outcome o;
    std::vector<std::vector<GraphFamily>> corpora(3);
    for (const auto &t : all_unlabelled_rooted_trees(7)) {
        corpora[0].push_back(GraphFamily::finite(t));
    }
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        corpora[1].push_back(GraphFamily::finite(random_connected(rng, 2 + i % 8, 0.45)));
    }
    for (const char *text : {"ray", "star(inf)", "fan(inf)", "joinall(paths)", "joinall(fans)", "rado", "path(3)",
                             "star(2)", "fan(3)", "join(ray, star(2))", "cycle(5)", "complete(4)"}) {
        corpora[2].push_back(parse_family(text));
    }
    int checked = 0;
    for (const auto &c : corpora) {
        for (int k = 1; k <= 4; ++k) {
            const auto census = ball_census(c, k);
            o.check(census.within_bound(), fmt("%.0f parts > 2^%.0f", census.parts.size(), census.types));
            ++checked;
        }
    }
    o.note(fmt("%.0f censuses within 2^|K|", checked));
    return o;
}

Outcome core_examples() {
    Outcome o;
    const auto g = cycle_graph(5, 2);
    const auto a = core({g, {}});
    o.check(canonical_rooted(a.graph) == canonical_rooted(g) && a.first.empty(), "unmarked core differs");
    const auto b = core({path_graph(3, 0), {2}});
    o.check(b.ground == std::vector<int>{0, 1} && b.first == std::vector<int>{2} && b.graph.size() == 3,
            "marked path core differs");
    RootedGraph star = star_graph(2);
    star.set_root(1);
    const auto c = core({star, {0}});
    o.check(c.ground == std::vector<int>{1} && c.first == std::vector<int>{0} && c.graph.size() == 2,
            "marked star core differs");
    bool threw = false;
    try {
        core({path_graph(3, 0), {0}});
    } catch (const UndefinedGroundFloor &) {
        threw = true;
    }
    o.check(threw, "root in W accepted");
    return o;
}

} // namespace

int main() {
    run(1, 1, singularity_constants);
    run(2, 10, rooted_leaf_probability);
    run(3, 120, bs_leaf_probability);
    run(4, 30, asymptotic_constants);
    run(5, 300, chain_oracle);
    run(6, 60, mass_identities);
    run(7, 120, concentration);
    run(8, 120, metric_suite);
    run(9, 60, ball_bound);
    run(10, 1, core_examples);
    std::printf("acceptance finished: %d of 10 criteria failed\n", failures);
    return 0;
}
