#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bslimits/canonical.hpp"
#include "bslimits/catalogue.hpp"
#include "bslimits/graph.hpp"
#include "bslimits/rational.hpp"

namespace bslimits {

// A 2-ended link: a block with a source and a sink, where every block vertex
// other than the sink carries a rooted branch. Links produced by
// enumerate_links share their catalogue and are materialised on demand.
class Link {
public:
    Link(std::shared_ptr<const Catalogue> cat, Catalogue::LinkShape shape);

    // From an explicit graph rooted at the source. Throws std::invalid_argument
    // unless the sink lies in a block with the source and has no neighbours
    // outside that block. The automorphism count is computed on first use.
    static Link from_graph(const RootedGraph &g, int sink);

    int size() const { return size_; }                    // |L|
    std::uint64_t automorphisms() const;                  // fixing source and sink
    Rational labellings() const;                          // |L|! / |Aut|

    // Graph rooted at the source, with sink and block vertex indices.
    RootedGraph graph() const;
    int source() const;
    int sink() const;
    std::vector<int> block() const;

    // Branch hanging at each block vertex other than the sink, in block order.
    std::vector<RootedGraph> branches() const;

    // Canonical code with the source as root and the sink coloured.
    CanonicalCode code() const;

    // True for K2 blocks.
    bool is_bridge() const;

private:
    Link() = default;
    const Catalogue::LinkGraph &materialised() const;

    std::shared_ptr<const Catalogue> cat_;
    Catalogue::LinkShape shape_;
    mutable std::shared_ptr<const Catalogue::LinkGraph> graph_;
    int size_ = 0;
    mutable std::optional<std::uint64_t> aut_;
};

// Links L_1..L_k glued sink-to-source, rooted at the source of L_1.
struct ChainPrefix {
    std::vector<Link> links;
    RootedGraph assembled;
    // sinks[j]: vertex of `assembled` that is the sink of L_{j+1}.
    std::vector<int> sinks;

    int total_size() const;
};

ChainPrefix assemble_chain(std::vector<Link> links);

} // namespace bslimits
