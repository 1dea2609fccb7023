#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "bslimits/classes.hpp"
#include "bslimits/graph.hpp"
#include "bslimits/series.hpp"
#include "bslimits/solve.hpp"

namespace bslimits {

// Exactly uniform rooted members of size n by the recursive method over the
// class's counting series. Unlabelled classes choose isomorphism types
// uniformly (multisets via the Nijenhuis-Wilf recurrence, block-branches by
// Burnside weighting over stabiliser elements); labelled classes return a
// uniform labelled member, vertex i carrying label i.
class UniformSampler {
public:
    UniformSampler(const BlockClass &cls, int max_n);

    RootedGraph sample(int n, gmp_randclass &rng) const;

    const ExactSeries &counts() const { return c_; }

private:
    struct Choice {
        int derived;
        std::vector<std::vector<int>> cycles; // non-root positions per cycle
        std::vector<int> lengths;             // sorted cycle lengths
        Rational weight;                      // 1/|G| (unlabelled) or 1/|Stab| (labelled)
    };

    const ExactSeries &suffix(const std::vector<int> &lengths, std::size_t from) const;
    void member(RootedGraph &g, int at, int n, gmp_randclass &rng) const;
    void block_branch(RootedGraph &g, int at, int j, gmp_randclass &rng) const;

    ClassKind kind_;
    int max_n_;
    ExactSeries c_;  // rooted members: counts (unlabelled) or egf coefficients
    ExactSeries w_;  // block-branches by number of non-root vertices
    ExactSeries e_;  // sets/multisets of block-branches: e_m = c_{m+1}
    std::vector<DerivedBlock> derived_;
    std::vector<Choice> choices_;
    mutable std::map<std::vector<int>, ExactSeries> products_;
};

// Picks index i with probability w[i] / sum(w) exactly. Weights must be
// nonnegative with a positive sum.
std::size_t choose_weighted(const std::vector<Rational> &w, gmp_randclass &rng);

// One-shot convenience wrapper; deterministic under the seed.
RootedGraph sample_uniform_rooted(const BlockClass &cls, int n, std::uint64_t seed);

enum class LinkMeasure { labelled, unlabelled_rooted };

// Boltzmann sampler for 2-ended links at the singularity. A link is drawn
// with probability p_L (labelled) or q_L (unlabelled) conditioned on
// |L| <= max_size; generation aborts and restarts as soon as the size bound
// is exceeded, so expected work is O(sqrt(max_size)).
class LinkSampler {
public:
    LinkSampler(const BlockClass &cls, const SingularityData &sing, LinkMeasure measure, int max_size,
                std::size_t order = 0);

    struct Draw {
        RootedGraph graph; // rooted at the source
        int sink = 0;
        int attempts = 1;  // draws including rejected oversize ones
    };
    Draw draw(std::mt19937_64 &rng) const;

    int max_size() const { return max_size_; }

    // Total Boltzmann mass of rooted members at rho^m (m = 1: tau).
    double member_mass(int m) const { return cval_.at(m); }
    // Mass of block-branches at rho^m and of all links (should be 1).
    double branch_mass(int m) const;
    double link_mass() const { return link_total_; }

private:
    struct Choice {
        int derived;
        std::vector<std::vector<int>> cycles; // cycles on non-root positions
        std::vector<int> fixed;               // fixed non-root positions (link sources)
    };
    struct Builder;

    double choice_weight(const Choice &c, int m) const;
    void member(Builder &b, int at, int m, std::mt19937_64 &rng) const;
    void block_branch(Builder &b, int at, int m, std::mt19937_64 &rng) const;
    int graft(Builder &b, int at, const Builder &piece) const;

    ClassKind kind_;
    int max_size_;
    double rho_, tau_;
    int max_index_; // rho^m treated as zero beyond this
    std::vector<double> cval_;                  // C(rho^m)
    std::vector<double> wval_;                  // W(rho^m)
    std::vector<std::vector<double>> tail_rates_; // W(rho^(m i)) / i for i >= 2
    std::vector<double> tail_total_;
    mutable std::vector<std::poisson_distribution<int>> pois_, tail_pois_;
    std::vector<DerivedBlock> derived_;
    std::vector<std::vector<Edge>> block_edges_;
    std::vector<Choice> choices_;
    std::vector<std::vector<double>> weights_;  // weights_[m][choice]
    std::vector<double> link_weights_;
    double link_total_ = 0;
};

} // namespace bslimits
