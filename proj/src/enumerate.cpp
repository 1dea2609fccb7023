#include "bslimits/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "bslimits/blocks.hpp"
#include "bslimits/canonical.hpp"
#include "bslimits/catalogue.hpp"

namespace bslimits {

bool is_class_member(const RootedGraph &g, const BlockClass &cls) {
    if (!cls.contains_block) {
        throw std::invalid_argument("class '" + cls.name + "' has no block membership test");
    }
    if (!is_connected(g)) {
        return false;
    }
    if (g.size() == 1) {
        return true;
    }
    for (const auto &b : block_cut_tree(g).blocks) {
        if (!cls.contains_block(induced_subgraph(g, b, 0))) {
            return false;
        }
    }
    return true;
}

std::vector<RootedGraph> all_class_members_labelled(int n, const BlockClass &cls) {
    if (n < 1 || n > 7) {
        throw std::out_of_range("all_class_members_labelled: n must lie in [1, 7]");
    }
    std::vector<Edge> pairs;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            pairs.emplace_back(u, v);
        }
    }
    std::vector<RootedGraph> out;
    const std::uint64_t subsets = std::uint64_t{1} << pairs.size();
    std::vector<Edge> chosen;
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        if (std::popcount(mask) < n - 1) {
            continue;
        }
        chosen.clear();
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (mask >> i & 1) {
                chosen.push_back(pairs[i]);
            }
        }
        auto g = RootedGraph::from_edges(n, chosen, 0);
        if (is_class_member(g, cls)) {
            out.push_back(std::move(g));
        }
    }
    return out;
}

std::vector<RootedGraph> all_unlabelled_rooted_members(int n, const BlockClass &cls) {
    Catalogue cat(cls, n);
    auto [lo, hi] = cat.members_of_size(n);
    std::vector<RootedGraph> out;
    out.reserve(hi - lo);
    for (int i = lo; i < hi; ++i) {
        out.push_back(cat.member_graph(i));
    }
    return out;
}

std::int64_t fringe_count(const RootedGraph &g, const RootedGraph &h, FringeMode mode) {
    const int hn = h.size() - 1;
    if (hn < 1) {
        throw std::invalid_argument("fringe_count: H needs a vertex besides its root");
    }
    if (!is_connected(h)) {
        throw std::invalid_argument("fringe_count: H is disconnected");
    }
    {
        const int other = h.root() == 0 ? 1 : 0;
        if (static_cast<int>(component_of(h, other, h.root()).size()) != hn) {
            throw std::invalid_argument("fringe_count: the root of H is a cut vertex");
        }
    }
    const auto h_code = canonical_rooted(h);
    const std::size_t h_edges = h.edge_count();
    const int h_root_degree = h.degree(h.root());

    const int n = g.size();
    // Iterative DFS with low-links; vertices in preorder so every DFS subtree
    // is a contiguous range of `pre`.
    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1), sub(n, 1), pre, comp_size(n, 0), comp_root(n, -1);
    pre.reserve(n);
    std::vector<std::size_t> it(n, 0);
    for (int s = 0; s < n; ++s) {
        if (disc[s] >= 0) {
            continue;
        }
        std::vector<int> stack{s};
        disc[s] = low[s] = static_cast<int>(pre.size());
        pre.push_back(s);
        while (!stack.empty()) {
            const int v = stack.back();
            const auto &nb = g.neighbours(v);
            if (it[v] < nb.size()) {
                const int w = nb[it[v]++];
                if (disc[w] < 0) {
                    parent[w] = v;
                    disc[w] = low[w] = static_cast<int>(pre.size());
                    pre.push_back(w);
                    stack.push_back(w);
                } else if (w != parent[v]) {
                    low[v] = std::min(low[v], disc[w]);
                }
            } else {
                stack.pop_back();
                if (parent[v] >= 0) {
                    low[parent[v]] = std::min(low[parent[v]], low[v]);
                    sub[parent[v]] += sub[v];
                }
            }
        }
        for (std::size_t i = disc[s]; i < pre.size(); ++i) {
            comp_root[pre[i]] = s;
        }
        comp_size[s] = sub[s];
    }

    std::int64_t count = 0;
    std::vector<int> verts;
    // verts = {x} + Q
    auto check = [&]() {
        if (mode == FringeMode::rooted && std::find(verts.begin() + 1, verts.end(), g.root()) != verts.end()) {
            return;
        }
        RootedGraph k = induced_subgraph(g, verts, 0);
        if (k.edge_count() != h_edges || k.degree(0) != h_root_degree) {
            return;
        }
        if (canonical_rooted(k) == h_code) {
            ++count;
        }
    };

    std::vector<char> mark(n, 0);
    for (int x = 0; x < n; ++x) {
        int separated = 0;
        for (int c : g.neighbours(x)) {
            if (parent[c] != x || (parent[x] >= 0 && low[c] < disc[x])) {
                continue;
            }
            separated += sub[c];
            if (sub[c] == hn) {
                verts.assign(1, x);
                verts.insert(verts.end(), pre.begin() + disc[c], pre.begin() + disc[c] + sub[c]);
                check();
            }
        }
        if (parent[x] < 0) {
            continue;
        }
        const int rest = comp_size[comp_root[x]] - 1 - separated;
        if (rest != hn) {
            continue;
        }
        // The component of G - x through the DFS parent.
        verts.assign(1, x);
        mark[x] = 1;
        verts.push_back(parent[x]);
        mark[parent[x]] = 1;
        for (std::size_t i = 1; i < verts.size(); ++i) {
            for (int w : g.neighbours(verts[i])) {
                if (!mark[w]) {
                    mark[w] = 1;
                    verts.push_back(w);
                }
            }
        }
        for (int v : verts) {
            mark[v] = 0;
        }
        check();
    }
    return count;
}

namespace {

struct ChainSearch {
    const RootedGraph &g;
    const BlockCutTree bct;
    std::vector<CanonicalCode> codes;
    std::vector<int> sizes;
    std::vector<char> used;

    // Vertices reachable from `from` avoiding `blocked` and used vertices.
    std::vector<int> reach(int from, int blocked) const {
        std::vector<int> out{from};
        std::vector<char> seen(g.size(), 0);
        seen[from] = 1;
        seen[blocked] = 1;
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (int w : g.neighbours(out[i])) {
                if (!seen[w] && !used[w]) {
                    seen[w] = 1;
                    out.push_back(w);
                }
            }
        }
        return out;
    }

    bool run(std::size_t j, int cur) {
        if (j == codes.size()) {
            return true;
        }
        for (int b : bct.blocks_of_vertex[cur]) {
            for (int t : bct.blocks[b]) {
                if (t == cur || used[t]) {
                    continue;
                }
                auto s = reach(cur, t);
                if (static_cast<int>(s.size()) != sizes[j]) {
                    continue;
                }
                s.push_back(t);
                RootedGraph cand = induced_subgraph(g, s, 0);
                std::vector<int> colors(s.size(), 0);
                colors.back() = 1;
                if (canonical_rooted(cand, colors) != codes[j]) {
                    continue;
                }
                s.pop_back();
                for (int v : s) {
                    used[v] = 1;
                }
                if (run(j + 1, t)) {
                    return true;
                }
                for (int v : s) {
                    used[v] = 0;
                }
            }
        }
        return false;
    }
};

} // namespace

bool matches_chain(const RootedGraph &g, std::span<const Link> links, const BlockClass &cls) {
    if (cls.contains_block && !is_class_member(g, cls)) {
        throw std::invalid_argument("matches_chain: graph is not a member of class '" + cls.name + "'");
    }
    int total = 0;
    for (const auto &l : links) {
        total += l.size();
    }
    if (g.size() - total <= total) {
        return false;
    }
    if (links.empty()) {
        return true;
    }
    ChainSearch search{g, block_cut_tree(g), {}, {}, std::vector<char>(g.size(), 0)};
    for (const auto &l : links) {
        search.codes.push_back(l.code());
        search.sizes.push_back(l.size());
    }
    return search.run(0, g.root());
}

TreeChainMatcher::TreeChainMatcher(std::span<const Link> links) {
    for (const auto &l : links) {
        if (!l.is_bridge()) {
            throw std::invalid_argument("TreeChainMatcher: every link must be a bridge");
        }
        const auto br = l.branches();
        if (!is_tree(br.at(0))) {
            throw std::invalid_argument("TreeChainMatcher: link is not a tree");
        }
        steps_.push_back({l.size(), ahu_code(br[0], br[0].root())});
        total_ += l.size();
    }
}

void TreeChainMatcher::prepare(const PruferTree &t) const {
    const int n = t.n;
    parent_ = t.parent;
    start_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) {
        if (t.parent[v] >= 0) {
            ++start_[v + 1];
            ++start_[t.parent[v] + 1];
        }
    }
    for (int v = 0; v < n; ++v) {
        start_[v + 1] += start_[v];
    }
    nbr_.resize(2 * static_cast<std::size_t>(n > 0 ? n - 1 : 0));
    std::vector<int> fill(start_.begin(), start_.end() - 1);
    for (int v = 0; v < n; ++v) {
        if (t.parent[v] >= 0) {
            nbr_[fill[v]++] = t.parent[v];
            nbr_[fill[t.parent[v]]++] = v;
        }
    }
    sub_.assign(n, 1);
    for (int v : t.order) {
        if (t.parent[v] >= 0) {
            sub_[t.parent[v]] += sub_[v];
        }
    }
}

std::string TreeChainMatcher::code_without(int v, int ex1, int ex2) const {
    std::vector<std::string> kids;
    for (int i = start_[v]; i < start_[v + 1]; ++i) {
        const int w = nbr_[i];
        if (w != ex1 && w != ex2) {
            kids.push_back(code_without(w, v, v));
        }
    }
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (auto &k : kids) {
        out += k;
    }
    out += ')';
    return out;
}

bool TreeChainMatcher::walk(int n, int r) const {
    if (n - total_ <= total_) {
        return false;
    }
    // Size of the component containing b after deleting the edge {a, b}.
    auto side = [&](int a, int b) { return parent_[b] == a ? sub_[b] : n - sub_[a]; };
    int cur = r, prev = -1, prev_side = 0;
    for (const auto &step : steps_) {
        int next = -1;
        for (int i = start_[cur]; i < start_[cur + 1]; ++i) {
            const int t = nbr_[i];
            if (t != prev && n - prev_side - side(cur, t) == step.size) {
                next = t;
                break;
            }
        }
        if (next < 0) {
            return false;
        }
        if (step.size > 1 && code_without(cur, prev, next) != step.code) {
            return false;
        }
        prev_side = n - side(cur, next);
        prev = cur;
        cur = next;
    }
    return true;
}

bool TreeChainMatcher::matches_at(const PruferTree &t, int r) const {
    prepare(t);
    return walk(t.n, r);
}

std::int64_t TreeChainMatcher::count_roots(const PruferTree &t) const {
    prepare(t);
    std::int64_t c = 0;
    for (int r = 0; r < t.n; ++r) {
        c += walk(t.n, r) ? 1 : 0;
    }
    return c;
}

bool TreeChainMatcher::matches(const RootedGraph &tree) const {
    if (!is_tree(tree)) {
        throw std::invalid_argument("TreeChainMatcher: graph is not a tree");
    }
    // Re-express as a parent array rooted at vertex n - 1.
    const int n = tree.size();
    PruferTree t;
    t.n = n;
    t.parent.assign(n, -1);
    std::vector<int> bfs{n - 1};
    std::vector<char> seen(n, 0);
    seen[n - 1] = 1;
    for (std::size_t i = 0; i < bfs.size(); ++i) {
        for (int w : tree.neighbours(bfs[i])) {
            if (!seen[w]) {
                seen[w] = 1;
                t.parent[w] = bfs[i];
                bfs.push_back(w);
            }
        }
    }
    t.order.assign(bfs.rbegin(), bfs.rend() - 1);
    return matches_at(t, tree.root());
}

std::vector<EventCount> chain_events_labelled_trees(int n, std::span<const TreeChainMatcher> matchers,
                                                    unsigned threads) {
    if (n < 2 || n > 12) {
        throw std::out_of_range("chain_events_labelled_trees: n must lie in [2, 12]");
    }
    std::vector<EventCount> out(matchers.size());
    if (n == 2) {
        PruferTree t;
        prufer_decode({}, t);
        for (std::size_t i = 0; i < matchers.size(); ++i) {
            out[i] = {matchers[i].matches_at(t, n - 1) ? 1u : 0u, 1};
        }
        return out;
    }
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    // Tasks: the first Pruefer entry.
    std::atomic<int> next{0};
    std::vector<std::vector<EventCount>> partial(threads, std::vector<EventCount>(matchers.size()));
    auto work = [&](unsigned id) {
        std::vector<TreeChainMatcher> local(matchers.begin(), matchers.end());
        PruferTree t;
        std::vector<int> code(n - 2, 0);
        for (int first; (first = next++) < n;) {
            std::fill(code.begin(), code.end(), 0);
            code[0] = first;
            while (true) {
                prufer_decode(code, t);
                for (std::size_t i = 0; i < local.size(); ++i) {
                    partial[id][i].hits += local[i].matches_at(t, n - 1) ? 1 : 0;
                    ++partial[id][i].total;
                }
                int i = n - 3;
                while (i >= 1 && code[i] == n - 1) {
                    code[i--] = 0;
                }
                if (i < 1) {
                    break;
                }
                ++code[i];
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < threads; ++id) {
        pool.emplace_back(work, id);
    }
    for (auto &th : pool) {
        th.join();
    }
    for (const auto &p : partial) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i].hits += p[i].hits;
            out[i].total += p[i].total;
        }
    }
    return out;
}

EventCount chain_event_labelled_trees(int n, const TreeChainMatcher &m) {
    return chain_events_labelled_trees(n, std::span<const TreeChainMatcher>(&m, 1)).front();
}

EventCount chain_event_unlabelled_trees(int n, const TreeChainMatcher &m) {
    EventCount c;
    for_each_level_sequence(n, [&](std::span<const int> l) {
        c.hits += m.matches(tree_from_level_sequence(l)) ? 1 : 0;
        ++c.total;
    });
    return c;
}

} // namespace bslimits
