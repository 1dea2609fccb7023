#include "bslimits/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bslimits {

std::size_t choose_weighted(const std::vector<Rational> &w, gmp_randclass &rng) {
    mpz_class den = 1;
    for (const auto &x : w) {
        if (sgn(x) < 0) {
            throw std::invalid_argument("choose_weighted: negative weight");
        }
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    }
    std::vector<mpz_class> iw(w.size());
    mpz_class total = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        iw[i] = w[i].get_num() * (den / w[i].get_den());
        total += iw[i];
    }
    if (total <= 0) {
        throw std::invalid_argument("choose_weighted: weights sum to zero");
    }
    mpz_class r = rng.get_z_range(total);
    for (std::size_t i = 0; i < iw.size(); ++i) {
        if (r < iw[i]) {
            return i;
        }
        r -= iw[i];
    }
    return iw.size() - 1;
}

namespace {

std::vector<std::vector<int>> cycles_of(const std::vector<int> &perm, int skip) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(perm.size(), 0);
    for (int v = 0; v < static_cast<int>(perm.size()); ++v) {
        if (v == skip || seen[v]) {
            continue;
        }
        std::vector<int> c;
        for (int x = v; !seen[x]; x = perm[x]) {
            seen[x] = 1;
            c.push_back(x);
        }
        out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.size() < b.size(); });
    return out;
}

// Copies `piece` (rooted at vertex 0) into g with its root identified to `at`.
void graft_graph(RootedGraph &g, int at, const RootedGraph &piece) {
    std::vector<int> map(piece.size());
    map[0] = at;
    for (int v = 1; v < piece.size(); ++v) {
        map[v] = g.add_vertex();
    }
    for (auto [u, v] : piece.edges()) {
        g.add_edge(map[u], map[v]);
    }
}

int nonroot_limit(const BlockClass &cls, int n) {
    return cls.max_block_nonroot < 0 ? n : std::min(n, cls.max_block_nonroot);
}

} // namespace

UniformSampler::UniformSampler(const BlockClass &cls, int max_n) : kind_(cls.kind), max_n_(max_n) {
    if (!cls.has_block_generator()) {
        throw std::invalid_argument("sampling requires a block generator; class '" + cls.name + "' has none");
    }
    if (max_n < 1) {
        throw std::invalid_argument("UniformSampler: max_n must be positive");
    }
    c_ = solve_class(cls, static_cast<std::size_t>(max_n));
    for (int k = 1; k <= nonroot_limit(cls, max_n - 1); ++k) {
        for (auto &d : cls.derived_blocks(k)) {
            const int di = static_cast<int>(derived_.size());
            std::vector<int> positions;
            for (int v = 0; v < d.block.size(); ++v) {
                if (v != d.block.root()) {
                    positions.push_back(v);
                }
            }
            if (kind_ == ClassKind::labelled) {
                Choice ch{di, {}, std::vector<int>(positions.size(), 1),
                          Rational(1, static_cast<unsigned long>(d.stabilizer_order))};
                for (int p : positions) {
                    ch.cycles.push_back({p});
                }
                choices_.push_back(std::move(ch));
            } else {
                if (d.stabilizer.empty()) {
                    throw std::invalid_argument("class '" + cls.name + "': block group too large to sample");
                }
                const Rational weight(1, static_cast<unsigned long>(d.stabilizer.size()));
                for (const auto &g : d.stabilizer) {
                    Choice ch{di, cycles_of(g, d.block.root()), {}, weight};
                    for (const auto &c : ch.cycles) {
                        ch.lengths.push_back(static_cast<int>(c.size()));
                    }
                    choices_.push_back(std::move(ch));
                }
            }
            derived_.push_back(std::move(d));
        }
    }
    w_ = ExactSeries(max_n_);
    for (const auto &ch : choices_) {
        w_ += scale(suffix(ch.lengths, 0), ch.weight);
    }
    e_ = ExactSeries(max_n_);
    for (int m = 0; m < max_n_; ++m) {
        e_[m] = c_[m + 1];
    }
}

const ExactSeries &UniformSampler::suffix(const std::vector<int> &lengths, std::size_t from) const {
    std::vector<int> key(lengths.begin() + static_cast<std::ptrdiff_t>(from), lengths.end());
    if (auto it = products_.find(key); it != products_.end()) {
        return it->second;
    }
    ExactSeries out(max_n_);
    if (key.empty()) {
        out[0] = 1;
    } else {
        const ExactSeries &rest = suffix(lengths, from + 1);
        out = substitute_powers(c_, static_cast<std::size_t>(key.front())) * rest;
    }
    return products_.emplace(std::move(key), std::move(out)).first->second;
}

void UniformSampler::member(RootedGraph &g, int at, int n, gmp_randclass &rng) const {
    int m = n - 1;
    while (m > 0) {
        std::vector<Rational> w;
        std::vector<std::pair<int, int>> opts; // (j, copies)
        for (int j = 1; j <= m; ++j) {
            if (w_[j] == 0) {
                continue;
            }
            if (kind_ == ClassKind::labelled) {
                opts.emplace_back(j, 1);
                w.push_back(Rational(j * w_[j] * e_[m - j]));
            } else {
                for (int d = 1; j * d <= m; ++d) {
                    opts.emplace_back(j, d);
                    w.push_back(Rational(j * w_[j] * e_[m - j * d]));
                }
            }
        }
        const auto [j, d] = opts[choose_weighted(w, rng)];
        if (d == 1) {
            block_branch(g, at, j, rng);
        } else {
            RootedGraph piece(1, 0);
            block_branch(piece, 0, j, rng);
            for (int copy = 0; copy < d; ++copy) {
                graft_graph(g, at, piece);
            }
        }
        m -= j * d;
    }
}

void UniformSampler::block_branch(RootedGraph &g, int at, int j, gmp_randclass &rng) const {
    std::vector<Rational> w;
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(choices_.size()); ++i) {
        const auto &ch = choices_[i];
        if (derived_[ch.derived].nonroot() > j) {
            continue;
        }
        const Rational x = ch.weight * suffix(ch.lengths, 0)[j];
        if (x != 0) {
            w.push_back(x);
            idx.push_back(i);
        }
    }
    const Choice &ch = choices_[idx[choose_weighted(w, rng)]];
    const DerivedBlock &d = derived_[ch.derived];

    std::vector<int> map(d.block.size(), -1);
    map[d.block.root()] = at;
    for (int v = 0; v < d.block.size(); ++v) {
        if (v != d.block.root()) {
            map[v] = g.add_vertex();
        }
    }
    for (auto [u, v] : d.block.edges()) {
        g.add_edge(map[u], map[v]);
    }
    int rem = j;
    for (std::size_t i = 0; i < ch.cycles.size(); ++i) {
        const int len = static_cast<int>(ch.cycles[i].size());
        const ExactSeries &rest = suffix(ch.lengths, i + 1);
        std::vector<Rational> sw;
        std::vector<int> sizes;
        for (int s = 1; len * s <= rem; ++s) {
            const Rational x = c_[s] * rest[rem - len * s];
            if (x != 0) {
                sw.push_back(x);
                sizes.push_back(s);
            }
        }
        const int s = sizes[choose_weighted(sw, rng)];
        rem -= len * s;
        if (len == 1) {
            member(g, map[ch.cycles[i][0]], s, rng);
        } else {
            RootedGraph piece(1, 0);
            member(piece, 0, s, rng);
            for (int v : ch.cycles[i]) {
                graft_graph(g, map[v], piece);
            }
        }
    }
}

RootedGraph UniformSampler::sample(int n, gmp_randclass &rng) const {
    if (n < 1 || n > max_n_) {
        throw std::out_of_range("sample: n = " + std::to_string(n) + " beyond the sampler's order " +
                                std::to_string(max_n_));
    }
    RootedGraph g(1, 0);
    member(g, 0, n, rng);
    if (kind_ == ClassKind::unlabelled) {
        return g;
    }
    // Uniform labels.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        const int r = static_cast<int>(mpz_class(rng.get_z_range(i + 1)).get_si());
        std::swap(perm[i], perm[r]);
    }
    RootedGraph out(n, perm[0]);
    for (auto [u, v] : g.edges()) {
        out.add_edge(perm[u], perm[v]);
    }
    return out;
}

RootedGraph sample_uniform_rooted(const BlockClass &cls, int n, std::uint64_t seed) {
    UniformSampler s(cls, n);
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(mpz_class(std::to_string(seed)));
    return s.sample(n, rng);
}

// ---------------------------------------------------------------------------

namespace {

struct Oversize {};

} // namespace

struct LinkSampler::Builder {
    int n = 1;
    int cap;
    std::vector<Edge> edges;

    explicit Builder(int cap_) : cap(cap_) {}
    int add_vertex() {
        if (n >= cap) {
            throw Oversize{};
        }
        return n++;
    }
};

int LinkSampler::graft(Builder &b, int at, const Builder &piece) const {
    const int base = b.n - 1;
    for (int v = 1; v < piece.n; ++v) {
        b.add_vertex();
    }
    for (auto [u, v] : piece.edges) {
        b.edges.emplace_back(u == 0 ? at : u + base, v == 0 ? at : v + base);
    }
    return base;
}

LinkSampler::LinkSampler(const BlockClass &cls, const SingularityData &sing, LinkMeasure measure, int max_size,
                         std::size_t order)
    : kind_(cls.kind), max_size_(max_size), rho_(sing.rho), tau_(sing.tau) {
    if (!cls.has_block_generator()) {
        throw std::invalid_argument("link sampling requires a block generator; class '" + cls.name + "' has none");
    }
    if ((measure == LinkMeasure::labelled) != (cls.kind == ClassKind::labelled)) {
        throw std::invalid_argument("link measure does not match the class kind");
    }
    if (max_size < 1) {
        throw std::invalid_argument("LinkSampler: max_size must be positive");
    }
    // Values C(rho^m); rho^m below 1e-40 contributes nothing measurable.
    max_index_ = kind_ == ClassKind::labelled ? 1 : std::max(1, static_cast<int>(std::floor(-40 * std::log(10.0) / std::log(rho_))));
    cval_.assign(max_index_ + 1, 0.0);
    cval_[1] = tau_;
    if (max_index_ > 1) {
        if (order == 0) {
            order = static_cast<std::size_t>(cls.default_order);
            if (cls.valid_order) {
                order = std::min<std::size_t>(order, static_cast<std::size_t>(*cls.valid_order));
            }
        }
        const FloatSeries cs = solve_class_float(cls, order, rho_);
        for (int m = 2; m <= max_index_; ++m) {
            const double x = std::pow(rho_, m - 1);
            double acc = 0, p = 1;
            for (std::size_t i = 1; i <= cs.order(); ++i) {
                p *= x;
                acc += cs[i] * p;
                if (p < 1e-300) {
                    break;
                }
            }
            cval_[m] = acc;
        }
    }

    // Derived blocks until their total contribution is negligible.
    const int limit = nonroot_limit(cls, max_size);
    for (int k = 1; k <= limit; ++k) {
        double size_mass = 0;
        for (auto &d : cls.derived_blocks(k)) {
            const int di = static_cast<int>(derived_.size());
            if (kind_ == ClassKind::labelled) {
                Choice ch{di, {}, {}};
                for (int v = 0; v < d.block.size(); ++v) {
                    if (v != d.block.root()) {
                        ch.cycles.push_back({v});
                        ch.fixed.push_back(v);
                    }
                }
                choices_.push_back(std::move(ch));
                size_mass += std::pow(tau_, k) / static_cast<double>(d.stabilizer_order);
            } else {
                if (d.stabilizer.empty()) {
                    throw std::invalid_argument("class '" + cls.name + "': block group too large to sample");
                }
                for (const auto &g : d.stabilizer) {
                    Choice ch{di, cycles_of(g, d.block.root()), {}};
                    for (const auto &c : ch.cycles) {
                        if (c.size() == 1) {
                            ch.fixed.push_back(c[0]);
                        }
                    }
                    choices_.push_back(std::move(ch));
                }
                size_mass += std::pow(tau_, k);
            }
            derived_.push_back(std::move(d));
        }
        if (k >= 4 && size_mass < 1e-18) {
            break;
        }
    }

    for (const auto &d : derived_) {
        block_edges_.push_back(d.block.edges());
    }
    weights_.assign(max_index_ + 1, {});
    wval_.assign(max_index_ + 1, 0.0);
    for (int m = 1; m <= max_index_; ++m) {
        for (const auto &ch : choices_) {
            weights_[m].push_back(choice_weight(ch, m));
        }
        wval_[m] = std::accumulate(weights_[m].begin(), weights_[m].end(), 0.0);
    }
    tail_rates_.assign(max_index_ + 1, {});
    tail_total_.assign(max_index_ + 1, 0.0);
    for (int m = 1; m <= max_index_; ++m) {
        for (int i = 2; m * i <= max_index_; ++i) {
            tail_rates_[m].push_back(wval_[m * i] / i);
        }
        tail_total_[m] = std::accumulate(tail_rates_[m].begin(), tail_rates_[m].end(), 0.0);
    }
    pois_.resize(max_index_ + 1);
    tail_pois_.resize(max_index_ + 1);
    for (int m = 1; m <= max_index_; ++m) {
        if (wval_[m] > 0) {
            pois_[m] = std::poisson_distribution<int>(wval_[m]);
        }
        if (tail_total_[m] > 0) {
            tail_pois_[m] = std::poisson_distribution<int>(tail_total_[m]);
        }
    }
    for (std::size_t i = 0; i < choices_.size(); ++i) {
        link_weights_.push_back(weights_[1][i] * static_cast<double>(choices_[i].fixed.size()) / tau_);
    }
    link_total_ = tau_ * std::accumulate(link_weights_.begin(), link_weights_.end(), 0.0);
}

double LinkSampler::choice_weight(const Choice &c, int m) const {
    const auto &d = derived_[c.derived];
    double w = 1.0 / static_cast<double>(kind_ == ClassKind::labelled ? d.stabilizer_order : d.stabilizer.size());
    for (const auto &cyc : c.cycles) {
        const int idx = m * static_cast<int>(cyc.size());
        if (idx > max_index_) {
            return 0.0;
        }
        w *= cval_[idx];
    }
    return w;
}

double LinkSampler::branch_mass(int m) const { return wval_.at(m); }

namespace {

std::size_t pick(const std::vector<double> &w, double total, std::mt19937_64 &rng) {
    double u = std::uniform_real_distribution<double>(0.0, total)(rng);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (u < w[i]) {
            return i;
        }
        u -= w[i];
    }
    // Rounding: fall back to the last positive weight.
    for (std::size_t i = w.size(); i-- > 0;) {
        if (w[i] > 0) {
            return i;
        }
    }
    return 0;
}

} // namespace

void LinkSampler::member(Builder &b, int at, int m, std::mt19937_64 &rng) const {
    // Independent Poisson counts per i; the i >= 2 part is drawn as one
    // Poisson total split multinomially, which has the same law.
    auto emit = [&](int i) {
        if (i == 1) {
            block_branch(b, at, m, rng);
            return;
        }
        Builder piece(b.cap);
        block_branch(piece, 0, m * i, rng);
        for (int copy = 0; copy < i; ++copy) {
            graft(b, at, piece);
        }
    };
    if (wval_[m] > 0) {
        for (int c = pois_[m](rng); c > 0; --c) {
            emit(1);
        }
    }
    if (kind_ == ClassKind::labelled || !(tail_total_[m] > 0)) {
        return;
    }
    for (int c = tail_pois_[m](rng); c > 0; --c) {
        emit(2 + static_cast<int>(pick(tail_rates_[m], tail_total_[m], rng)));
    }
}

void LinkSampler::block_branch(Builder &b, int at, int m, std::mt19937_64 &rng) const {
    const Choice &ch = choices_[pick(weights_[m], wval_[m], rng)];
    const auto &d = derived_[ch.derived];
    std::vector<int> map(d.block.size(), -1);
    map[d.block.root()] = at;
    for (int v = 0; v < d.block.size(); ++v) {
        if (v != d.block.root()) {
            map[v] = b.add_vertex();
        }
    }
    for (auto [u, v] : block_edges_[ch.derived]) {
        b.edges.emplace_back(map[u], map[v]);
    }
    for (const auto &cyc : ch.cycles) {
        const int len = static_cast<int>(cyc.size());
        if (len == 1) {
            member(b, map[cyc[0]], m, rng);
            continue;
        }
        Builder piece(b.cap);
        member(piece, 0, m * len, rng);
        for (int v : cyc) {
            graft(b, map[v], piece);
        }
    }
}

LinkSampler::Draw LinkSampler::draw(std::mt19937_64 &rng) const {
    Draw out;
    out.attempts = 0;
    const double total = std::accumulate(link_weights_.begin(), link_weights_.end(), 0.0);
    while (true) {
        ++out.attempts;
        // Vertex 0 of the builder is the sink; |L| = n - 1 <= max_size.
        Builder b(max_size_ + 1);
        try {
            const Choice &ch = choices_[pick(link_weights_, total, rng)];
            const auto &d = derived_[ch.derived];
            const int src_pos =
                ch.fixed[std::uniform_int_distribution<std::size_t>(0, ch.fixed.size() - 1)(rng)];
            std::vector<int> map(d.block.size(), -1);
            map[d.block.root()] = 0;
            for (int v = 0; v < d.block.size(); ++v) {
                if (v != d.block.root()) {
                    map[v] = b.add_vertex();
                }
            }
            for (auto [u, v] : block_edges_[ch.derived]) {
                b.edges.emplace_back(map[u], map[v]);
            }
            for (const auto &cyc : ch.cycles) {
                const int len = static_cast<int>(cyc.size());
                if (len == 1) {
                    member(b, map[cyc[0]], 1, rng);
                    continue;
                }
                Builder piece(b.cap);
                member(piece, 0, len, rng);
                for (int v : cyc) {
                    graft(b, map[v], piece);
                }
            }
            out.graph = RootedGraph(b.n, map[src_pos]);
            for (auto [u, v] : b.edges) {
                out.graph.add_edge(u, v);
            }
            out.sink = 0;
            return out;
        } catch (const Oversize &) {
        }
    }
}

} // namespace bslimits
