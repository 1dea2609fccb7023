#include "bslimits/link.hpp"

#include <algorithm>
#include <stdexcept>

#include "bslimits/blocks.hpp"

namespace bslimits {

Link::Link(std::shared_ptr<const Catalogue> cat, Catalogue::LinkShape shape)
    : cat_(std::move(cat)), shape_(std::move(shape)), size_(shape_.size), aut_(shape_.aut) {}

Link Link::from_graph(const RootedGraph &g, int sink) {
    if (sink < 0 || sink >= g.size() || sink == g.root()) {
        throw std::invalid_argument("link: sink must be a vertex other than the source");
    }
    if (!is_connected(g)) {
        throw std::invalid_argument("link: graph is disconnected");
    }
    const auto bct = block_cut_tree(g);
    const std::vector<int> *shared = nullptr;
    for (const auto &b : bct.blocks) {
        if (std::binary_search(b.begin(), b.end(), g.root()) && std::binary_search(b.begin(), b.end(), sink)) {
            shared = &b;
        }
    }
    if (shared == nullptr) {
        throw std::invalid_argument("link: source and sink are not in a common block");
    }
    for (int w : g.neighbours(sink)) {
        if (!std::binary_search(shared->begin(), shared->end(), w)) {
            throw std::invalid_argument("link: sink has a neighbour outside the shared block");
        }
    }
    Link l;
    auto lg = std::make_shared<Catalogue::LinkGraph>();
    lg->graph = g;
    lg->source = g.root();
    lg->sink = sink;
    lg->block = *shared;
    l.graph_ = std::move(lg);
    l.size_ = g.size() - 1;
    return l;
}

std::uint64_t Link::automorphisms() const {
    if (!aut_) {
        const auto &lg = materialised();
        std::vector<int> colors(lg.graph.size(), 0);
        colors[lg.sink] = 1;
        aut_ = automorphism_count(lg.graph, colors);
    }
    return *aut_;
}

const Catalogue::LinkGraph &Link::materialised() const {
    if (!graph_) {
        graph_ = std::make_shared<Catalogue::LinkGraph>(cat_->link_graph(shape_));
    }
    return *graph_;
}

Rational Link::labellings() const {
    Rational f = 1;
    for (int i = 2; i <= size_; ++i) {
        f *= i;
    }
    return Rational(f / Rational(static_cast<unsigned long>(automorphisms())));
}

RootedGraph Link::graph() const { return materialised().graph; }
int Link::source() const { return materialised().source; }
int Link::sink() const { return materialised().sink; }
std::vector<int> Link::block() const { return materialised().block; }

bool Link::is_bridge() const {
    if (cat_ && !graph_) {
        return cat_->derived().at(shape_.derived).block.size() == 2;
    }
    return materialised().block.size() == 2;
}

std::vector<RootedGraph> Link::branches() const {
    const auto &lg = materialised();
    std::vector<char> in_block(lg.graph.size(), 0);
    for (int v : lg.block) {
        in_block[v] = 1;
    }
    std::vector<RootedGraph> out;
    for (int x : lg.block) {
        if (x == lg.sink) {
            continue;
        }
        // Vertices reachable from x without entering the block again.
        std::vector<int> verts{x};
        std::vector<char> seen(lg.graph.size(), 0);
        seen[x] = 1;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            for (int w : lg.graph.neighbours(verts[i])) {
                if (!seen[w] && !in_block[w]) {
                    seen[w] = 1;
                    verts.push_back(w);
                }
            }
        }
        out.push_back(induced_subgraph(lg.graph, verts, 0));
    }
    return out;
}

CanonicalCode Link::code() const {
    const auto &lg = materialised();
    std::vector<int> colors(lg.graph.size(), 0);
    colors[lg.sink] = 1;
    return canonical_rooted(lg.graph, colors);
}

int ChainPrefix::total_size() const {
    int t = 0;
    for (const auto &l : links) {
        t += l.size();
    }
    return t;
}

ChainPrefix assemble_chain(std::vector<Link> links) {
    ChainPrefix out;
    out.assembled = RootedGraph(1, 0);
    int attach = 0; // vertex of the assembled graph playing the next source
    for (const auto &l : links) {
        const RootedGraph g = l.graph();
        std::vector<int> map(g.size(), -1);
        map[g.root()] = attach;
        for (int v = 0; v < g.size(); ++v) {
            if (v != g.root()) {
                map[v] = out.assembled.add_vertex();
            }
        }
        for (auto [u, v] : g.edges()) {
            out.assembled.add_edge(map[u], map[v]);
        }
        attach = map[l.sink()];
        out.sinks.push_back(attach);
    }
    out.links = std::move(links);
    return out;
}

} // namespace bslimits
