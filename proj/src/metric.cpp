#include "bslimits/metric.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <string>

namespace bslimits {

namespace {

using CodeSet = std::set<CanonicalCode>;

std::vector<CanonicalCode> to_vector(const CodeSet &s) { return {s.begin(), s.end()}; }

bool involves_rado(const GraphFamily &f) {
    if (f.kind == GraphFamily::Kind::rado) {
        return true;
    }
    return std::any_of(f.parts.begin(), f.parts.end(), involves_rado);
}

// Connected vertex sets of size r containing the root, each exactly once.
class ConnectedSets {
public:
    ConnectedSets(const RootedGraph &g, int r) : g_(g), r_(r), seen_(g.size(), 0) {}

    CodeSet run() {
        const int root = g_.root();
        std::vector<int> set{root};
        seen_[root] = 1;
        std::vector<int> ext;
        for (int w : g_.neighbours(root)) {
            seen_[w] = 1;
            ext.push_back(w);
        }
        grow(set, ext);
        return std::move(out_);
    }

private:
    void grow(std::vector<int> &set, const std::vector<int> &ext) {
        if (static_cast<int>(set.size()) == r_) {
            out_.insert(canonical_rooted(induced_subgraph(g_, set, 0)));
            return;
        }
        for (std::size_t i = 0; i < ext.size(); ++i) {
            const int v = ext[i];
            std::vector<int> next(ext.begin() + static_cast<std::ptrdiff_t>(i) + 1, ext.end());
            std::vector<int> added;
            for (int w : g_.neighbours(v)) {
                if (!seen_[w]) {
                    seen_[w] = 1;
                    added.push_back(w);
                    next.push_back(w);
                }
            }
            set.push_back(v);
            grow(set, next);
            set.pop_back();
            for (int w : added) {
                seen_[w] = 0;
            }
        }
    }

    const RootedGraph &g_;
    int r_;
    std::vector<char> seen_;
    CodeSet out_;
};

CodeSet finite_profile(const RootedGraph &g, int r) {
    // Every RCIS on r vertices lies in the ball of radius r - 1.
    return ConnectedSets(ball(g, r - 1), r).run();
}

RootedGraph runs_graph(const std::vector<int> &runs) {
    RootedGraph g(1, 0);
    for (int len : runs) {
        int prev = -1;
        for (int j = 0; j < len; ++j) {
            const int v = g.add_vertex();
            g.add_edge(0, v);
            if (prev >= 0) {
                g.add_edge(prev, v);
            }
            prev = v;
        }
    }
    return g;
}

// Partitions of `total` into parts <= max_part, nonincreasing.
void partitions(int total, int max_part, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
    if (total == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(total, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(total - p, p, cur, out);
        cur.pop_back();
    }
}

CodeSet fan_profile(int n, int r) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(r - 1, r - 1, cur, parts);
    CodeSet out;
    for (const auto &runs : parts) {
        const int total = r - 1;
        const int gaps = runs.empty() ? 0 : static_cast<int>(runs.size()) - 1;
        if (n >= 0 && total + gaps > n) {
            continue;
        }
        out.insert(canonical_rooted(runs_graph(runs)));
    }
    return out;
}

// Joins of pieces, one per slot; pieces[i][s] holds the graphs with s non-root vertices.
void join_slots(const std::vector<std::vector<std::vector<RootedGraph>>> &pieces, std::size_t slot, int left,
                std::vector<RootedGraph> &chosen, CodeSet &out) {
    if (slot == pieces.size()) {
        if (left == 0) {
            out.insert(canonical_rooted(join(chosen)));
        }
        return;
    }
    const auto &by_size = pieces[slot];
    for (int s = 0; s <= left && s < static_cast<int>(by_size.size()); ++s) {
        for (const auto &p : by_size[s]) {
            chosen.push_back(p);
            join_slots(pieces, slot + 1, left - s, chosen, out);
            chosen.pop_back();
        }
    }
}

// Multisets of nontrivial pieces; pieces are indexed (size, idx) and taken in
// nondecreasing order to avoid repeats.
void join_multisets(const std::vector<std::vector<RootedGraph>> &by_size, int left, int min_size, std::size_t min_idx,
                    std::vector<RootedGraph> &chosen, CodeSet &out) {
    if (left == 0) {
        if (chosen.empty()) {
            out.insert(canonical_rooted(RootedGraph(1, 0)));
        } else {
            out.insert(canonical_rooted(join(chosen)));
        }
        return;
    }
    for (int s = min_size; s <= left && s < static_cast<int>(by_size.size()); ++s) {
        const std::size_t from = s == min_size ? min_idx : 0;
        for (std::size_t i = from; i < by_size[s].size(); ++i) {
            chosen.push_back(by_size[s][i]);
            join_multisets(by_size, left - s, s, i, chosen, out);
            chosen.pop_back();
        }
    }
}

std::vector<RootedGraph> decode_all(const RcisProfile &p) {
    std::vector<RootedGraph> gs;
    gs.reserve(p.codes.size());
    for (const auto &c : p.codes) {
        gs.push_back(decode_canonical(c));
    }
    return gs;
}

CodeSet compute_profile(const GraphFamily &f, int r) {
    using K = GraphFamily::Kind;
    switch (f.kind) {
    case K::finite:
        return finite_profile(f.graph, r);
    case K::path:
        if (r > f.n + 1) {
            return {};
        }
        [[fallthrough]];
    case K::ray:
        return {canonical_rooted(path_graph(r, 0))};
    case K::star:
        if (r - 1 > f.n) {
            return {};
        }
        [[fallthrough]];
    case K::star_inf:
        return {canonical_rooted(star_graph(r - 1))};
    case K::fan:
        return fan_profile(f.n, r);
    case K::fan_inf:
        return fan_profile(-1, r);
    case K::join: {
        std::vector<std::vector<std::vector<RootedGraph>>> pieces;
        for (const auto &part : f.parts) {
            std::vector<std::vector<RootedGraph>> by_size;
            for (int s = 1; s <= r; ++s) {
                by_size.push_back(decode_all(rcis_profile(part, s)));
            }
            pieces.push_back(std::move(by_size));
        }
        CodeSet out;
        std::vector<RootedGraph> chosen;
        join_slots(pieces, 0, r - 1, chosen, out);
        return out;
    }
    case K::join_all_paths:
    case K::join_all_fans: {
        const GraphFamily member =
            f.kind == K::join_all_paths ? GraphFamily::path(2 * r) : GraphFamily::fan(2 * r);
        std::vector<std::vector<RootedGraph>> by_size(1);
        for (int s = 2; s <= r; ++s) {
            by_size.push_back(decode_all(rcis_profile(member, s)));
        }
        CodeSet out;
        std::vector<RootedGraph> chosen;
        join_multisets(by_size, r - 1, 1, 0, chosen, out);
        return out;
    }
    case K::rado: {
        const auto &all = connected_rooted_graphs(r);
        return {all.begin(), all.end()};
    }
    }
    return {};
}

struct ProfileCache {
    std::mutex mu;
    std::map<std::pair<std::string, int>, RcisProfile> table;
};

ProfileCache &cache() {
    static ProfileCache c;
    return c;
}

} // namespace

RcisProfile rcis_profile(const GraphFamily &f, int r) {
    if (r < 1 || r > kProfileBound) {
        throw std::out_of_range("profile size " + std::to_string(r) + " outside 1.." +
                                std::to_string(kProfileBound));
    }
    if (r > kRadoProfileBound && involves_rado(f)) {
        throw std::out_of_range("profiles involving rado are limited to size " +
                                std::to_string(kRadoProfileBound));
    }
    auto key = std::make_pair(f.to_string(), r);
    auto &c = cache();
    {
        std::lock_guard lock(c.mu);
        if (auto it = c.table.find(key); it != c.table.end()) {
            return it->second;
        }
    }
    RcisProfile p{r, to_vector(compute_profile(f, r))};
    std::lock_guard lock(c.mu);
    return c.table.emplace(std::move(key), std::move(p)).first->second;
}

RcisProfile rcis_profile(const RootedGraph &g, int r) {
    if (r < 1 || r > kProfileBound) {
        throw std::out_of_range("profile size " + std::to_string(r) + " outside 1.." +
                                std::to_string(kProfileBound));
    }
    return {r, to_vector(finite_profile(g, r))};
}

const std::vector<CanonicalCode> &connected_rooted_graphs(int r) {
    if (r < 1 || r > kProfileBound) {
        throw std::out_of_range("graph size outside 1.." + std::to_string(kProfileBound));
    }
    static std::mutex mu;
    static std::vector<std::vector<CanonicalCode>> levels;
    std::lock_guard lock(mu);
    if (levels.empty()) {
        levels.push_back({canonical_rooted(RootedGraph(1, 0))});
    }
    // Every connected graph on s + 1 >= 2 vertices has a non-root vertex whose
    // removal keeps it connected, so extending each s-vertex type by a new
    // vertex with every nonempty neighbour set reaches all types.
    while (static_cast<int>(levels.size()) < r) {
        const int s = static_cast<int>(levels.size());
        CodeSet next;
        for (const auto &code : levels.back()) {
            const RootedGraph base = decode_canonical(code);
            for (std::uint32_t mask = 1; mask < (1u << s); ++mask) {
                RootedGraph g = base;
                const int v = g.add_vertex();
                for (int u = 0; u < s; ++u) {
                    if (mask >> u & 1u) {
                        g.add_edge(u, v);
                    }
                }
                next.insert(canonical_rooted(g));
            }
        }
        levels.push_back(to_vector(next));
    }
    return levels[r - 1];
}

bool Radius::non_monotone() const {
    bool failed = false;
    for (bool a : agree) {
        if (!a) {
            failed = true;
        } else if (failed) {
            return true;
        }
    }
    return false;
}

Radius radius_similarity(const GraphFamily &f, const GraphFamily &g, int r_max) {
    if (r_max < 1) {
        throw std::invalid_argument("r_max must be positive");
    }
    Radius out;
    out.at_least = true;
    out.r = r_max;
    for (int s = 1; s <= r_max; ++s) {
        const bool same = rcis_profile(f, s) == rcis_profile(g, s);
        out.agree.push_back(same);
        if (!same && out.at_least) {
            out.at_least = false;
            out.r = s - 1;
        }
    }
    return out;
}

Distance d_value(const GraphFamily &f, const GraphFamily &g, int r_max) {
    const Radius rad = radius_similarity(f, g, r_max);
    return {1.0 / rad.r, rad.at_least};
}

int ball_agreement_radius(const RootedGraph &g, const RootedGraph &h, int r_max) {
    int best = -1;
    for (int rho = 0; rho <= r_max; ++rho) {
        if (canonical_rooted(ball(g, rho)) != canonical_rooted(ball(h, rho))) {
            break;
        }
        best = rho;
    }
    return best;
}

Distance d_neighbourhood(const RootedGraph &g, const RootedGraph &h, int r_max) {
    const int rho = ball_agreement_radius(g, h, r_max);
    return {1.0 / (rho + 1), rho == r_max};
}

bool BallCensus::within_bound() const {
    return types >= 63 || parts.size() <= (std::size_t{1} << types);
}

BallCensus ball_census(std::span<const GraphFamily> graphs, int k) {
    if (k < 1) {
        throw std::invalid_argument("census size must be positive");
    }
    BallCensus out;
    out.k = k;
    for (int s = 1; s <= k; ++s) {
        out.types += connected_rooted_graphs(s).size();
    }
    std::map<std::vector<CanonicalCode>, std::size_t> part_of;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        std::vector<CanonicalCode> sig;
        for (int s = 1; s <= k; ++s) {
            const auto p = rcis_profile(graphs[i], s);
            sig.insert(sig.end(), p.codes.begin(), p.codes.end());
            sig.push_back(CanonicalCode{}); // size separator
        }
        auto [it, fresh] = part_of.emplace(std::move(sig), out.parts.size());
        if (fresh) {
            out.parts.emplace_back();
        }
        out.parts[it->second].push_back(static_cast<int>(i));
    }
    return out;
}

Core core(const OmegaMarkedGraph &g) {
    const int n = g.base.size();
    std::vector<char> marked(n, 0);
    for (int w : g.marked) {
        if (w < 0 || w >= n) {
            throw std::invalid_argument("marked vertex out of range");
        }
        marked[w] = 1;
    }
    const int root = g.base.root();
    if (marked[root]) {
        throw UndefinedGroundFloor("root has infinite degree: ground floor is empty");
    }
    std::vector<char> in_ground(n, 0);
    std::vector<int> stack{root};
    in_ground[root] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : g.base.neighbours(v)) {
            if (!in_ground[w] && !marked[w]) {
                in_ground[w] = 1;
                stack.push_back(w);
            }
        }
    }
    Core out;
    for (int v = 0; v < n; ++v) {
        if (in_ground[v]) {
            out.ground.push_back(v);
        } else if (marked[v]) {
            const auto &nb = g.base.neighbours(v);
            if (std::any_of(nb.begin(), nb.end(), [&](int w) { return in_ground[w] != 0; })) {
                out.first.push_back(v);
            }
        }
    }
    out.vertices.push_back(root);
    for (int v : out.ground) {
        if (v != root) {
            out.vertices.push_back(v);
        }
    }
    out.vertices.insert(out.vertices.end(), out.first.begin(), out.first.end());
    out.graph = induced_subgraph(g.base, out.vertices, 0);
    for (int v : out.vertices) {
        out.infinite.push_back(marked[v] != 0);
    }
    return out;
}

} // namespace bslimits
