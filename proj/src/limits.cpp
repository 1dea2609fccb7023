#include "bslimits/limits.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "bslimits/canonical.hpp"
#include "bslimits/catalogue.hpp"

namespace bslimits {

namespace {

std::size_t effective_order(const BlockClass &cls, std::size_t order) {
    if (order == 0) {
        order = static_cast<std::size_t>(cls.default_order);
        if (cls.valid_order) {
            order = std::min<std::size_t>(order, static_cast<std::size_t>(*cls.valid_order));
        }
    }
    cls.check_order(order);
    return order;
}

// Limit of r_n = a + b/n + c/n^2 + ... from three consecutive terms ending at n.
double richardson2(std::span<const double> r, std::size_t n) {
    const double a = static_cast<double>(n);
    return (a * a * r[n] - 2 * (a - 1) * (a - 1) * r[n - 1] + (a - 2) * (a - 2) * r[n - 2]) / 2;
}

FloatSeries sub(const FloatSeries &f, std::size_t l, double s) { return substitute_powers_scaled(f, l, s); }
ExactSeries sub(const ExactSeries &f, std::size_t l, const Rational &) { return substitute_powers(f, l); }

// Fringe-copy series D for H with h non-root vertices, given C (scaled by s
// in the floating case).
template <class T, class S>
TruncatedSeries<T> fringe_impl(const BlockClass &cls, const TruncatedSeries<T> &c, int h, const S &s) {
    const std::size_t n = c.order();
    std::vector<TruncatedSeries<T>> cl;
    for (int l = 1; l <= cls.num_variables; ++l) {
        cl.push_back(sub(c, static_cast<std::size_t>(l), s));
    }
    const TruncatedSeries<T> z1 = cls.z_d1_at(std::span<const TruncatedSeries<T>>(cl));
    TruncatedSeries<T> p(n);
    {
        T sh = T(1);
        for (int i = 0; i < h; ++i) {
            sh = sh * T(s);
        }
        T w = sh;
        for (std::size_t k = static_cast<std::size_t>(h); k <= n; k += static_cast<std::size_t>(h)) {
            p[k] = w;
            w = w * sh;
        }
    }
    TruncatedSeries<T> q = c * z1;
    q = scale(q, T(-1));
    q[0] = q[0] + T(1);
    const TruncatedSeries<T> inv = reciprocal(q);

    TruncatedSeries<T> d(n);
    int passes = 2;
    for (std::size_t m = 1; m < n; m *= 2) {
        ++passes;
    }
    for (int pass = 0; pass < passes; ++pass) {
        std::vector<Dual<TruncatedSeries<T>>> args;
        for (int l = 1; l <= cls.num_variables; ++l) {
            args.push_back({cl[l - 1], scale(sub(d, static_cast<std::size_t>(l), s), T(static_cast<long>(l)))});
        }
        const TruncatedSeries<T> e = cls.z_bprime(std::span<const Dual<TruncatedSeries<T>>>(args)).eps;
        TruncatedSeries<T> rest = e - z1 * d;
        for (std::size_t i = 2; i <= n; ++i) {
            rest += sub(e, i, s);
        }
        d = c * (rest + p) * inv;
    }
    return d;
}

} // namespace

std::vector<Link> enumerate_links(const BlockClass &cls, int max_size) {
    if (max_size < 1 || max_size > 14) {
        throw std::out_of_range("enumerate_links: max_size must lie in [1, 14]");
    }
    auto cat = std::make_shared<const Catalogue>(cls, max_size);
    std::vector<Link> out;
    for (auto &shape : cat->links(max_size)) {
        out.emplace_back(cat, std::move(shape));
    }
    return out;
}

double p_link(const Link &l, const SingularityData &sing) {
    return std::pow(sing.rho, l.size()) / static_cast<double>(l.automorphisms());
}

double q_link(const Link &l, const SingularityData &sing) { return std::pow(sing.rho, l.size()); }

CycleIndex link_cycle_index(const Link &l) {
    const RootedGraph g = l.graph();
    std::vector<int> colors(g.size(), 0);
    colors[l.sink()] = 1;
    const auto group = all_automorphisms(g, colors);
    return CycleIndex::of_group(group, l.sink());
}

ChainMode default_chain_mode(const BlockClass &cls) {
    return cls.kind == ClassKind::labelled ? ChainMode::labelled : ChainMode::unlabelled_rooted;
}

double chain_probability(const SingularityData &sing, std::span<const Link> links, ChainMode mode) {
    double p = 1;
    for (const auto &l : links) {
        p *= mode == ChainMode::labelled ? p_link(l, sing) : q_link(l, sing);
    }
    return p;
}

void check_fringe_graph(const RootedGraph &h) {
    if (h.size() < 2) {
        throw std::invalid_argument("fringe graph needs a vertex besides its root");
    }
    if (!is_connected(h)) {
        throw std::invalid_argument("fringe graph is disconnected");
    }
    const int other = h.root() == 0 ? 1 : 0;
    if (static_cast<int>(component_of(h, other, h.root()).size()) != h.size() - 1) {
        throw std::invalid_argument("root of the fringe graph lies in more than one block");
    }
}

double mu_fringe_labelled(const RootedGraph &h, const BlockClass &cls, const SingularityData &sing) {
    if (cls.kind != ClassKind::labelled) {
        throw std::invalid_argument("mu_fringe_labelled: class is unlabelled");
    }
    check_fringe_graph(h);
    const int k = h.size() - 1;
    return std::exp(k * std::log(sing.rho) - std::lgamma(k + 1.0)) / sing.tau;
}

double fringe_density_labelled(const RootedGraph &h, const BlockClass &cls, const SingularityData &sing) {
    const int k = h.size() - 1;
    return mu_fringe_labelled(h, cls, sing) * std::exp(std::lgamma(k + 1.0)) /
           static_cast<double>(automorphism_count(h));
}

ExactSeries fringe_series_unlabelled(const RootedGraph &h, const BlockClass &cls, std::size_t n) {
    if (cls.kind != ClassKind::unlabelled) {
        throw std::invalid_argument("fringe_series_unlabelled: class is labelled");
    }
    check_fringe_graph(h);
    return fringe_impl(cls, solve_class(cls, n), h.size() - 1, Rational(1));
}

FringeEstimate mu_fringe_unlabelled(const RootedGraph &h, const BlockClass &cls, std::size_t order, double tol) {
    if (cls.kind != ClassKind::unlabelled) {
        throw std::invalid_argument("mu_fringe_unlabelled: class is labelled");
    }
    check_fringe_graph(h);
    const std::size_t n = effective_order(cls, order);
    if (n < 16) {
        throw OrderTooLow("mu_fringe_unlabelled: order " + std::to_string(n) + " is too low to extrapolate");
    }
    const SingularityData sing = find_singularity(cls, 1e-12, n);
    const FloatSeries c = solve_class_float(cls, n, sing.rho);
    const FloatSeries d = fringe_impl(cls, c, h.size() - 1, sing.rho);
    std::vector<double> r(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        r[k] = c[k] > 0 ? d[k] / (static_cast<double>(k) * c[k]) : 0.0;
    }
    FringeEstimate out;
    out.order = n;
    out.value = richardson2(r, n);
    out.coarse = richardson2(r, n - n / 4);
    if (!(std::abs(out.value - out.coarse) <= tol)) {
        throw OrderTooLow("mu_fringe_unlabelled: estimates at orders " + std::to_string(n - n / 4) + " and " +
                          std::to_string(n) + " differ by " + std::to_string(std::abs(out.value - out.coarse)) +
                          "; raise the truncation order");
    }
    return out;
}

int source_orbit_size(const ChainPrefix &chain) {
    if (chain.links.empty()) {
        return 1;
    }
    RootedGraph h = chain.assembled;
    h.set_root(chain.sinks.back());
    const auto orbits = automorphism_orbits(h);
    return static_cast<int>(std::count(orbits.begin(), orbits.end(), orbits[0]));
}

double bs_chain_probability(const BlockClass &cls, std::span<const Link> links, std::size_t order, double tol) {
    if (links.empty()) {
        return 1.0;
    }
    const ChainPrefix chain = assemble_chain(std::vector<Link>(links.begin(), links.end()));
    RootedGraph h = chain.assembled;
    h.set_root(chain.sinks.back());
    return source_orbit_size(chain) * mu_fringe_unlabelled(h, cls, order, tol).value;
}

std::vector<double> link_mass_by_size(const BlockClass &cls, const SingularityData &sing, int max_size,
                                      std::size_t order) {
    const std::size_t n = effective_order(cls, order);
    if (max_size < 1 || static_cast<std::size_t>(max_size) > n) {
        throw std::out_of_range("link_mass_by_size: size must lie in [1, " + std::to_string(n) +
                                "] at this truncation order");
    }
    const FloatSeries c = solve_class_float(cls, n, sing.rho);
    FloatSeries l;
    if (cls.kind == ClassKind::labelled) {
        l = c * cls.bdoubleprime_at(c);
    } else {
        std::vector<FloatSeries> cl;
        for (int k = 1; k <= cls.num_variables; ++k) {
            cl.push_back(substitute_powers_scaled(c, static_cast<std::size_t>(k), sing.rho));
        }
        l = c * cls.z_d1_at(std::span<const FloatSeries>(cl));
    }
    return std::vector<double>(l.coeffs().begin() + 1, l.coeffs().begin() + 1 + max_size);
}

namespace {

struct TailModel {
    std::vector<double> tail; // tail[m] = 1 - S_m, m = 0..N
    double kappa;
};

TailModel tail_model(const BlockClass &cls, const SingularityData &sing, std::size_t order) {
    const std::size_t n = effective_order(cls, order);
    const auto mass = link_mass_by_size(cls, sing, static_cast<int>(n), n);
    TailModel t;
    t.tail.assign(n + 1, 1.0);
    double s = 0;
    for (std::size_t m = 1; m <= n; ++m) {
        s += mass[m - 1];
        t.tail[m] = 1.0 - s;
    }
    t.kappa = std::max(0.0, t.tail[n]) * std::sqrt(static_cast<double>(n));
    return t;
}

} // namespace

double link_tail_estimate(const BlockClass &cls, const SingularityData &sing, int max_size, std::size_t order) {
    const auto t = tail_model(cls, sing, order);
    const std::size_t n = t.tail.size() - 1;
    if (max_size < 1) {
        throw std::invalid_argument("link_tail_estimate: size must be positive");
    }
    if (static_cast<std::size_t>(max_size) <= n) {
        return std::max(0.0, t.tail[max_size]);
    }
    return t.kappa / std::sqrt(static_cast<double>(max_size));
}

LinkCutoff link_size_cutoff(const BlockClass &cls, const SingularityData &sing, double epsilon, std::size_t order) {
    if (!(epsilon > 0 && epsilon < 1)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    const auto t = tail_model(cls, sing, order);
    const std::size_t n = t.tail.size() - 1;
    LinkCutoff out;
    for (std::size_t m = 1; m <= n; ++m) {
        if (t.tail[m] <= epsilon) {
            out.max_size = static_cast<int>(m);
            out.tail = std::max(0.0, t.tail[m]);
            return out;
        }
    }
    const double m = std::ceil((t.kappa / epsilon) * (t.kappa / epsilon));
    if (m > 5e8) {
        throw std::domain_error("link cutoff for epsilon = " + std::to_string(epsilon) +
                                " exceeds 5e8 vertices; use a larger epsilon");
    }
    out.max_size = std::max(static_cast<int>(n) + 1, static_cast<int>(m));
    out.tail = t.kappa / std::sqrt(static_cast<double>(out.max_size));
    out.extrapolated = true;
    return out;
}

LevelMass level_mass_deficit(const BlockClass &cls, int k, std::size_t order) {
    const std::size_t n = effective_order(cls, order);
    const FloatSeries t = level_series_float(cls, k, n);
    const FloatSeries cu = solve_class_float(cls, n);
    std::vector<double> r(n + 1, 0.0);
    for (std::size_t m = 1; m <= n; ++m) {
        r[m] = t[m] / (static_cast<double>(m) * cu[m]);
    }
    return {r[n], richardson2(r, n)};
}

namespace {

LinkCutoff sampler_cutoff(const BlockClass &cls, const SingularityData &sing, double epsilon, int max_size) {
    if (max_size == 0) {
        return link_size_cutoff(cls, sing, epsilon);
    }
    LinkCutoff c;
    c.max_size = max_size;
    c.tail = link_tail_estimate(cls, sing, max_size);
    c.extrapolated = static_cast<std::size_t>(max_size) > effective_order(cls, 0);
    if (c.tail > epsilon) {
        const auto need = link_size_cutoff(cls, sing, epsilon);
        throw std::invalid_argument("link cutoff " + std::to_string(max_size) + " leaves tail mass " +
                                    std::to_string(c.tail) + " > epsilon; use a cutoff of at least " +
                                    std::to_string(need.max_size));
    }
    return c;
}

LinkMeasure measure_of(ChainMode mode) {
    return mode == ChainMode::labelled ? LinkMeasure::labelled : LinkMeasure::unlabelled_rooted;
}

} // namespace

LimitChainSampler::LimitChainSampler(const BlockClass &cls, const SingularityData &sing, ChainMode mode,
                                     double epsilon, int max_size)
    : epsilon_(epsilon), cutoff_(sampler_cutoff(cls, sing, epsilon, max_size)),
      sampler_(cls, sing, measure_of(mode), cutoff_.max_size) {}

Link LimitChainSampler::sample_link(std::mt19937_64 &rng) const {
    auto d = sampler_.draw(rng);
    return Link::from_graph(d.graph, d.sink);
}

ChainPrefix LimitChainSampler::sample(int k, std::mt19937_64 &rng) const {
    if (k < 0) {
        throw std::invalid_argument("chain length must be nonnegative");
    }
    std::vector<Link> links;
    for (int j = 0; j < k; ++j) {
        links.push_back(sample_link(rng));
    }
    return assemble_chain(std::move(links));
}

ChainPrefix sample_limit_chain(const BlockClass &cls, const SingularityData &sing, int k, ChainMode mode,
                               std::uint64_t seed, double epsilon) {
    LimitChainSampler s(cls, sing, mode, epsilon);
    std::mt19937_64 rng(seed);
    return s.sample(k, rng);
}

} // namespace bslimits
