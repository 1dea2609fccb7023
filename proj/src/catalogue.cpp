#include "bslimits/catalogue.hpp"

#include <stdexcept>

namespace bslimits {

Catalogue::Catalogue(const BlockClass &cls, int max_size) : max_size_(max_size) {
    if (!cls.has_block_generator()) {
        throw std::invalid_argument("class '" + cls.name + "' has no block generator");
    }
    if (max_size < 1) {
        throw std::invalid_argument("Catalogue: max_size must be positive");
    }
    for (int k = 1; k <= max_size; ++k) {
        for (auto &d : cls.derived_blocks(k)) {
            if (d.stabilizer.empty()) {
                throw std::invalid_argument("class '" + cls.name + "': block on " + std::to_string(k + 1) +
                                            " vertices has too many automorphisms to enumerate");
            }
            derived_.push_back(std::move(d));
        }
    }

    member_start_.assign(max_size + 2, 0);
    member_start_[1] = 0;
    members_.push_back(Member{});
    member_start_[2] = 1;

    for (int n = 2; n <= max_size; ++n) {
        // Block-branches with n - 1 non-root vertices.
        const int j = n - 1;
        for (int di = 0; di < static_cast<int>(derived_.size()); ++di) {
            const auto &d = derived_[di];
            if (d.nonroot() > j) {
                continue;
            }
            std::vector<int> positions;
            for (int v = 0; v < d.block.size(); ++v) {
                if (v != d.block.root()) {
                    positions.push_back(v);
                }
            }
            assignments(d, positions, d.stabilizer, j, [&](const std::vector<int> &a, std::uint64_t stab) {
                BlockBranch b;
                b.derived = di;
                b.branch = a;
                b.size = j;
                b.aut = stab;
                for (int m : a) {
                    b.aut *= members_[m].aut;
                }
                branches_.push_back(std::move(b));
            });
        }

        // Members with n vertices: multisets of block-branches of total n - 1.
        std::vector<int> parts;
        auto rec = [&](auto &&self, int from, int remaining) -> void {
            if (remaining == 0) {
                Member m;
                m.parts = parts;
                m.size = n;
                std::uint64_t aut = 1;
                for (std::size_t i = 0; i < parts.size();) {
                    std::size_t k = i;
                    std::uint64_t mult = 0;
                    while (k < parts.size() && parts[k] == parts[i]) {
                        ++mult;
                        aut *= mult * branches_[parts[k]].aut;
                        ++k;
                    }
                    i = k;
                }
                m.aut = aut;
                members_.push_back(std::move(m));
                return;
            }
            for (int idx = from; idx < static_cast<int>(branches_.size()) && branches_[idx].size <= remaining;
                 ++idx) {
                parts.push_back(idx);
                self(self, idx, remaining - branches_[idx].size);
                parts.pop_back();
            }
        };
        rec(rec, 0, n - 1);
        member_start_[n + 1] = static_cast<int>(members_.size());
    }
}

template <class Emit>
void Catalogue::assignments(const DerivedBlock &d, const std::vector<int> &positions,
                            const std::vector<std::vector<int>> &group, int total, Emit emit) const {
    const int k = static_cast<int>(positions.size());
    std::vector<int> index(d.block.size(), -1);
    for (int i = 0; i < k; ++i) {
        index[positions[i]] = i;
    }
    // Group elements as permutations of positions.
    std::vector<std::vector<int>> perms;
    for (const auto &g : group) {
        std::vector<int> p(k);
        for (int i = 0; i < k; ++i) {
            p[i] = index[g[positions[i]]];
        }
        perms.push_back(std::move(p));
    }
    std::vector<int> a(k), b(k);
    auto rec = [&](auto &&self, int i, int remaining) -> void {
        if (i == k) {
            if (remaining != 0) {
                return;
            }
            std::uint64_t stab = 0;
            for (const auto &p : perms) {
                for (int t = 0; t < k; ++t) {
                    b[p[t]] = a[t];
                }
                if (b < a) {
                    return;
                }
                if (b == a) {
                    ++stab;
                }
            }
            emit(a, stab);
            return;
        }
        const int slots_after = k - i - 1;
        for (int s = 1; s <= remaining - slots_after && s <= max_size_; ++s) {
            for (int m = member_start_[s]; m < member_start_[s + 1]; ++m) {
                a[i] = m;
                self(self, i + 1, remaining - s);
            }
        }
    };
    rec(rec, 0, total);
}

std::pair<int, int> Catalogue::members_of_size(int n) const {
    if (n < 1 || n > max_size_) {
        throw std::out_of_range("Catalogue: size " + std::to_string(n) + " outside [1, " +
                                std::to_string(max_size_) + "]");
    }
    return {member_start_[n], member_start_[n + 1]};
}

void Catalogue::attach_member(RootedGraph &g, int at, int member) const {
    for (int bi : members_[member].parts) {
        const auto &bb = branches_[bi];
        const auto &d = derived_[bb.derived];
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
        int pos = 0;
        for (int v = 0; v < d.block.size(); ++v) {
            if (v != d.block.root()) {
                attach_member(g, map[v], bb.branch[pos++]);
            }
        }
    }
}

RootedGraph Catalogue::member_graph(int index) const {
    RootedGraph g(1, 0);
    attach_member(g, 0, index);
    return g;
}

std::vector<Catalogue::LinkShape> Catalogue::links(int max_link) const {
    if (max_link > max_size_) {
        throw std::out_of_range("Catalogue::links: link size exceeds catalogue size");
    }
    std::vector<LinkShape> out;
    for (int m = 1; m <= max_link; ++m) {
        for (int di = 0; di < static_cast<int>(derived_.size()); ++di) {
            const auto &d = derived_[di];
            if (d.nonroot() > m) {
                continue;
            }
            std::vector<int> positions;
            for (int v = 0; v < d.block.size(); ++v) {
                if (v != d.block.root()) {
                    positions.push_back(v);
                }
            }
            std::vector<char> covered(d.block.size(), 0);
            for (int s : positions) {
                if (covered[s]) {
                    continue;
                }
                std::vector<std::vector<int>> fixing;
                for (const auto &g : d.stabilizer) {
                    covered[g[s]] = 1;
                    if (g[s] == s) {
                        fixing.push_back(g);
                    }
                }
                assignments(d, positions, fixing, m, [&](const std::vector<int> &a, std::uint64_t stab) {
                    LinkShape l;
                    l.derived = di;
                    l.source = s;
                    l.branch = a;
                    l.size = m;
                    l.aut = stab;
                    for (int x : a) {
                        l.aut *= members_[x].aut;
                    }
                    out.push_back(std::move(l));
                });
            }
        }
    }
    return out;
}

Catalogue::LinkGraph Catalogue::link_graph(const LinkShape &shape) const {
    const auto &d = derived_.at(shape.derived);
    LinkGraph out;
    out.graph = RootedGraph(d.block.size(), 0);
    for (auto [u, v] : d.block.edges()) {
        out.graph.add_edge(u, v);
    }
    int pos = 0;
    for (int v = 0; v < d.block.size(); ++v) {
        out.block.push_back(v);
        if (v != d.block.root()) {
            attach_member(out.graph, v, shape.branch[pos++]);
        }
    }
    out.source = shape.source;
    out.sink = d.block.root();
    out.graph.set_root(shape.source);
    return out;
}

} // namespace bslimits
