#include "bslimits/canonical.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace bslimits {

std::string CanonicalCode::hex() const {
    std::string out;
    char buf[17];
    for (auto w : words) {
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(w));
        out += buf;
    }
    return out;
}

std::size_t CanonicalCodeHash::operator()(const CanonicalCode &c) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto w : c.words) {
        h ^= w;
        h *= 1099511628211ull;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

namespace {

using Partition = std::vector<std::vector<int>>;

class Searcher {
public:
    Searcher(const RootedGraph &g, std::span<const int> colors)
        : n_(g.size()), adj_(g.adjacency_masks()), key_(n_) {
        for (int v = 0; v < n_; ++v) {
            const std::uint64_t c = colors.empty() ? 0u : static_cast<std::uint32_t>(colors[v]);
            key_[v] = (std::uint64_t{v == g.root() ? 0u : 1u} << 32) | c;
        }
    }

    CanonicalForm run() {
        std::map<std::uint64_t, std::vector<int>> groups;
        for (int v = 0; v < n_; ++v) {
            groups[key_[v]].push_back(v);
        }
        Partition p;
        for (auto &[k, cell] : groups) {
            p.push_back(std::move(cell));
        }
        search(std::move(p));
        return {best_, best_order_};
    }

private:
    Partition refine(Partition p) const {
        std::vector<int> cell_of(n_);
        while (true) {
            for (std::size_t i = 0; i < p.size(); ++i) {
                for (int v : p[i]) {
                    cell_of[v] = static_cast<int>(i);
                }
            }
            const std::size_t k = p.size();
            Partition next;
            next.reserve(n_);
            std::vector<std::pair<std::vector<int>, int>> sig;
            for (const auto &cell : p) {
                if (cell.size() == 1) {
                    next.push_back(cell);
                    continue;
                }
                sig.clear();
                for (int v : cell) {
                    std::vector<int> cnt(k, 0);
                    for (std::uint64_t m = adj_[v]; m; m &= m - 1) {
                        ++cnt[cell_of[std::countr_zero(m)]];
                    }
                    sig.emplace_back(std::move(cnt), v);
                }
                std::sort(sig.begin(), sig.end());
                std::size_t start = 0;
                for (std::size_t i = 1; i <= sig.size(); ++i) {
                    if (i == sig.size() || sig[i].first != sig[start].first) {
                        std::vector<int> part;
                        for (std::size_t j = start; j < i; ++j) {
                            part.push_back(sig[j].second);
                        }
                        next.push_back(std::move(part));
                        start = i;
                    }
                }
            }
            if (next.size() == k) {
                return next;
            }
            p = std::move(next);
        }
    }

    bool twins(int u, int v) const {
        const std::uint64_t mask = ~((std::uint64_t{1} << u) | (std::uint64_t{1} << v));
        return ((adj_[u] ^ adj_[v]) & mask) == 0;
    }

    void search(Partition p) {
        p = refine(std::move(p));
        std::size_t target = p.size();
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i].size() > 1) {
                target = i;
                break;
            }
        }
        if (target == p.size()) {
            leaf(p);
            return;
        }
        std::vector<int> tried;
        const std::vector<int> cell = p[target];
        for (int v : cell) {
            bool skip = false;
            for (int t : tried) {
                if (twins(t, v)) {
                    skip = true;
                    break;
                }
            }
            if (skip) {
                continue;
            }
            tried.push_back(v);
            Partition q;
            q.reserve(p.size() + 1);
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (i != target) {
                    q.push_back(p[i]);
                    continue;
                }
                q.push_back({v});
                std::vector<int> rest;
                for (int w : cell) {
                    if (w != v) {
                        rest.push_back(w);
                    }
                }
                q.push_back(std::move(rest));
            }
            search(std::move(q));
        }
    }

    void leaf(const Partition &p) {
        std::vector<int> order;
        order.reserve(n_);
        for (const auto &cell : p) {
            order.push_back(cell[0]);
        }
        std::vector<int> pos(n_);
        for (int i = 0; i < n_; ++i) {
            pos[order[i]] = i;
        }
        CanonicalCode code;
        code.words.reserve(1 + 2 * n_);
        code.words.push_back(static_cast<std::uint64_t>(n_));
        for (int i = 0; i < n_; ++i) {
            code.words.push_back(key_[order[i]]);
        }
        for (int i = 0; i < n_; ++i) {
            std::uint64_t row = 0;
            for (std::uint64_t m = adj_[order[i]]; m; m &= m - 1) {
                row |= std::uint64_t{1} << pos[std::countr_zero(m)];
            }
            code.words.push_back(row);
        }
        if (!have_ || code < best_) {
            best_ = std::move(code);
            best_order_ = std::move(order);
            have_ = true;
        }
    }

    int n_;
    std::vector<std::uint64_t> adj_;
    std::vector<std::uint64_t> key_;
    CanonicalCode best_;
    std::vector<int> best_order_;
    bool have_ = false;
};

} // namespace

CanonicalForm canonical_form(const RootedGraph &g, std::span<const int> colors, int bound) {
    if (g.size() > bound || g.size() > kCanonicalBound) {
        throw std::length_error("canonical_form: graph has " + std::to_string(g.size()) +
                                " vertices, bound is " + std::to_string(bound));
    }
    if (!colors.empty() && static_cast<int>(colors.size()) != g.size()) {
        throw std::invalid_argument("canonical_form: one colour per vertex required");
    }
    return Searcher(g, colors).run();
}

CanonicalCode canonical_unrooted(const RootedGraph &g) {
    RootedGraph h = g;
    CanonicalCode best;
    for (int v = 0; v < g.size(); ++v) {
        h.set_root(v);
        auto c = canonical_rooted(h);
        if (v == 0 || c < best) {
            best = std::move(c);
        }
    }
    return best;
}

RootedGraph decode_canonical(const CanonicalCode &code) {
    const auto &w = code.words;
    if (w.empty()) {
        throw std::invalid_argument("decode_canonical: empty code");
    }
    const int n = static_cast<int>(w[0]);
    if (static_cast<int>(w.size()) != 1 + 2 * n) {
        throw std::invalid_argument("decode_canonical: malformed code");
    }
    int root = 0;
    for (int i = 0; i < n; ++i) {
        if ((w[1 + i] >> 32) == 0) {
            root = i;
        }
    }
    RootedGraph g(n, root);
    for (int i = 0; i < n; ++i) {
        for (std::uint64_t m = w[1 + n + i]; m; m &= m - 1) {
            const int j = std::countr_zero(m);
            if (j > i) {
                g.add_edge(i, j);
            }
        }
    }
    return g;
}

std::vector<int> automorphism_orbits(const RootedGraph &g, std::span<const int> colors) {
    const int n = g.size();
    std::vector<int> base(n, 0);
    int fresh = 1;
    if (!colors.empty()) {
        base.assign(colors.begin(), colors.end());
        fresh = *std::max_element(base.begin(), base.end()) + 1;
    }
    std::vector<CanonicalCode> codes(n);
    for (int v = 0; v < n; ++v) {
        auto c = base;
        c[v] = fresh;
        codes[v] = canonical_rooted(g, c);
    }
    std::vector<int> orbit(n);
    for (int v = 0; v < n; ++v) {
        orbit[v] = v;
        for (int u = 0; u < v; ++u) {
            // Different base colours can never share an orbit.
            if (base[u] == base[v] && codes[u] == codes[v]) {
                orbit[v] = orbit[u];
                break;
            }
        }
    }
    return orbit;
}

std::uint64_t automorphism_count(const RootedGraph &g, std::span<const int> colors) {
    const int n = g.size();
    std::vector<int> cur(n, 0);
    if (!colors.empty()) {
        cur.assign(colors.begin(), colors.end());
    }
    std::uint64_t count = 1;
    while (true) {
        const auto orbit = automorphism_orbits(g, cur);
        std::vector<int> sizes(n, 0);
        for (int v = 0; v < n; ++v) {
            ++sizes[orbit[v]];
        }
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (sizes[v] > 1) {
                pick = v;
                break;
            }
        }
        if (pick < 0) {
            return count;
        }
        count *= static_cast<std::uint64_t>(sizes[pick]);
        cur[pick] = *std::max_element(cur.begin(), cur.end()) + 1;
    }
}

std::vector<std::vector<int>> all_automorphisms(const RootedGraph &g, std::span<const int> colors) {
    const int n = g.size();
    std::vector<int> col(n, 0);
    if (!colors.empty()) {
        col.assign(colors.begin(), colors.end());
    }
    std::vector<std::vector<int>> out;
    std::vector<int> image(n, -1);
    std::vector<char> used(n, 0);
    std::function<void(int)> extend = [&](int v) {
        if (v == n) {
            out.push_back(image);
            return;
        }
        for (int w = 0; w < n; ++w) {
            if (used[w] || col[w] != col[v] || g.degree(w) != g.degree(v)) {
                continue;
            }
            if ((v == g.root()) != (w == g.root())) {
                continue;
            }
            bool ok = true;
            for (int u = 0; u < v && ok; ++u) {
                ok = g.has_edge(u, v) == g.has_edge(image[u], w);
            }
            if (!ok) {
                continue;
            }
            image[v] = w;
            used[w] = 1;
            extend(v + 1);
            used[w] = 0;
            image[v] = -1;
        }
    };
    extend(0);
    return out;
}

} // namespace bslimits
