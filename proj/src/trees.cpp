#include "bslimits/trees.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace bslimits {

RootedGraph PruferTree::graph(int root) const {
    RootedGraph g(n, root);
    for (int v = 0; v < n; ++v) {
        if (parent[v] >= 0) {
            g.add_edge(v, parent[v]);
        }
    }
    return g;
}

void prufer_decode(std::span<const int> code, PruferTree &out) {
    const int n = static_cast<int>(code.size()) + 2;
    out.n = n;
    out.parent.assign(n, -1);
    out.order.clear();
    out.order.reserve(n - 1);
    std::vector<int> degree(n, 1);
    for (int v : code) {
        if (v < 0 || v >= n) {
            throw std::invalid_argument("prufer_decode: entry out of range");
        }
        ++degree[v];
    }
    int ptr = 0;
    while (degree[ptr] != 1) {
        ++ptr;
    }
    int leaf = ptr;
    for (int v : code) {
        out.parent[leaf] = v;
        out.order.push_back(leaf);
        if (--degree[v] == 1 && v < ptr) {
            leaf = v;
        } else {
            ++ptr;
            while (degree[ptr] != 1) {
                ++ptr;
            }
            leaf = ptr;
        }
    }
    out.parent[leaf] = n - 1;
    out.order.push_back(leaf);
}

void for_each_labelled_tree(int n, const std::function<void(const PruferTree &)> &visit) {
    if (n < 1 || n > 12) {
        throw std::out_of_range("for_each_labelled_tree: n must lie in [1, 12]");
    }
    PruferTree t;
    if (n == 1) {
        t.n = 1;
        t.parent = {-1};
        visit(t);
        return;
    }
    std::vector<int> code(n - 2, 0);
    while (true) {
        prufer_decode(code, t);
        visit(t);
        int i = n - 3;
        while (i >= 0 && code[i] == n - 1) {
            code[i--] = 0;
        }
        if (i < 0) {
            return;
        }
        ++code[i];
    }
}

std::vector<RootedGraph> all_labelled_trees(int n) {
    std::vector<RootedGraph> out;
    for_each_labelled_tree(n, [&](const PruferTree &t) { out.push_back(t.graph(0)); });
    return out;
}

PruferTree random_labelled_tree(int n, std::mt19937_64 &rng) {
    if (n < 1) {
        throw std::invalid_argument("random_labelled_tree: n must be positive");
    }
    PruferTree t;
    if (n == 1) {
        t.n = 1;
        t.parent = {-1};
        return t;
    }
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> code(n - 2);
    for (auto &c : code) {
        c = pick(rng);
    }
    prufer_decode(code, t);
    return t;
}

void for_each_level_sequence(int n, const std::function<void(std::span<const int>)> &visit) {
    if (n < 1 || n > 18) {
        throw std::out_of_range("unlabelled rooted trees: n must lie in [1, 18]");
    }
    std::vector<int> l(n);
    for (int i = 0; i < n; ++i) {
        l[i] = i + 1;
    }
    while (true) {
        visit(l);
        int p = n - 1;
        while (p >= 0 && l[p] <= 2) {
            --p;
        }
        if (p < 0) {
            return;
        }
        int q = p - 1;
        while (l[q] != l[p] - 1) {
            --q;
        }
        for (int i = p; i < n; ++i) {
            l[i] = l[i - (p - q)];
        }
    }
}

RootedGraph tree_from_level_sequence(std::span<const int> levels) {
    const int n = static_cast<int>(levels.size());
    RootedGraph g(n, 0);
    std::vector<int> last(n + 2, -1);
    for (int i = 0; i < n; ++i) {
        const int lv = levels[i];
        if (i == 0 ? lv != 1 : (lv < 2 || last[lv - 1] < 0)) {
            throw std::invalid_argument("invalid level sequence");
        }
        if (i > 0) {
            g.add_edge(last[lv - 1], i);
        }
        last[lv] = i;
        std::fill(last.begin() + lv + 1, last.end(), -1);
    }
    return g;
}

std::vector<RootedGraph> all_unlabelled_rooted_trees(int n) {
    std::vector<RootedGraph> out;
    for_each_level_sequence(n, [&](std::span<const int> l) { out.push_back(tree_from_level_sequence(l)); });
    return out;
}

bool is_tree(const RootedGraph &g) {
    return g.edge_count() + 1 == static_cast<std::size_t>(g.size()) && is_connected(g);
}

namespace {

std::vector<int> level_seq(const RootedGraph &t, int v, int from, int depth) {
    std::vector<std::vector<int>> kids;
    for (int w : t.neighbours(v)) {
        if (w != from) {
            kids.push_back(level_seq(t, w, v, depth + 1));
        }
    }
    std::sort(kids.begin(), kids.end(), std::greater<>());
    std::vector<int> out{depth};
    for (auto &k : kids) {
        out.insert(out.end(), k.begin(), k.end());
    }
    return out;
}

std::vector<int> centroids(const RootedGraph &t) {
    const int n = t.size();
    std::vector<int> parent(n, -1), order{0}, sub(n, 1);
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (int w : t.neighbours(order[i])) {
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = order[i];
                order.push_back(w);
            }
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (parent[*it] >= 0) {
            sub[parent[*it]] += sub[*it];
        }
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v) {
        int worst = n - sub[v];
        for (int w : t.neighbours(v)) {
            if (w != parent[v]) {
                worst = std::max(worst, sub[w]);
            }
        }
        if (2 * worst <= n) {
            out.push_back(v);
        }
    }
    return out;
}

} // namespace

std::vector<int> canonical_level_sequence(const RootedGraph &tree) {
    if (!is_tree(tree)) {
        throw std::invalid_argument("canonical_level_sequence: not a tree");
    }
    return level_seq(tree, tree.root(), -1, 1);
}

std::string ahu_code(const RootedGraph &tree, int v, int from) {
    std::vector<std::string> kids;
    for (int w : tree.neighbours(v)) {
        if (w != from) {
            kids.push_back(ahu_code(tree, w, v));
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

std::string free_tree_code(const RootedGraph &tree) {
    if (!is_tree(tree)) {
        throw std::invalid_argument("free_tree_code: not a tree");
    }
    std::string best;
    for (int c : centroids(tree)) {
        auto code = ahu_code(tree, c);
        if (best.empty() || code < best) {
            best = std::move(code);
        }
    }
    return best;
}

std::vector<RootedGraph> all_free_trees(int n) {
    std::vector<RootedGraph> out;
    std::unordered_set<std::string> seen;
    for_each_level_sequence(n, [&](std::span<const int> l) {
        RootedGraph t = tree_from_level_sequence(l);
        const auto cs = centroids(t);
        if (std::find(cs.begin(), cs.end(), 0) == cs.end()) {
            return;
        }
        if (seen.insert(free_tree_code(t)).second) {
            out.push_back(std::move(t));
        }
    });
    return out;
}

} // namespace bslimits
