#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "bslimits/classes.hpp"
#include "bslimits/link.hpp"
#include "bslimits/sampling.hpp"
#include "bslimits/solve.hpp"

namespace bslimits {

// All links with |L| <= max_size, one per isomorphism type fixing source and
// sink, ordered by size.
std::vector<Link> enumerate_links(const BlockClass &cls, int max_size);

// p_L = l(L) rho^|L| / |L|! = rho^|L| / |Aut(L)|.
double p_link(const Link &l, const SingularityData &sing);

// q_L = Z_L(rho, rho^2, ...). Every monomial of Z_L has weighted degree |L|
// and the coefficients sum to one, so this is rho^|L|.
double q_link(const Link &l, const SingularityData &sing);

// Cycle index of Aut(L) fixing source and sink, on the non-sink vertices.
// Lists the group, so only for small links.
CycleIndex link_cycle_index(const Link &l);

enum class ChainMode { labelled, unlabelled_rooted };

ChainMode default_chain_mode(const BlockClass &cls);

double chain_probability(const SingularityData &sing, std::span<const Link> links, ChainMode mode);

// Rejects H whose root is a cut vertex or which has no vertex besides the root.
void check_fringe_graph(const RootedGraph &h);

// mu_H = rho^|H| / (|H|! tau), |H| the number of non-root vertices.
double mu_fringe_labelled(const RootedGraph &h, const BlockClass &cls, const SingularityData &sing);

// Limiting density of fringe copies of the unlabelled shape H per vertex in
// labelled members: l(H) mu_H with l(H) = |H|! / |Aut(H)|.
double fringe_density_labelled(const RootedGraph &h, const BlockClass &cls, const SingularityData &sing);

struct OrderTooLow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FringeEstimate {
    double value = 0;   // extrapolated at the full order
    double coarse = 0;  // extrapolated at 3/4 of the order
    std::size_t order = 0;
};

// Fringe density of H in unlabelled rooted members: the limit of
// [z^n] D(z) / (n [z^n] C(z)), where D counts fringe copies and solves
// D = C (sum_i E(z^i) + sum_i z^{i h}), E(z) = sum_l l Z_l(C(z), C(z^2), ...) D(z^l),
// h = |H|. Throws OrderTooLow when the two extrapolations differ by more
// than `tol` (absolute).
FringeEstimate mu_fringe_unlabelled(const RootedGraph &h, const BlockClass &cls, std::size_t order = 0,
                                    double tol = 1e-4);

// Coefficients [z^n] D(z) of the fringe-copy series (exact, for oracles).
ExactSeries fringe_series_unlabelled(const RootedGraph &h, const BlockClass &cls, std::size_t n);

// Number of vertices of the assembled chain, rooted at the last sink, that
// are images of the first source under root-fixing automorphisms.
int source_orbit_size(const ChainPrefix &chain);

// P^(k)(L_1..L_k) = omega(H) mu_H for H the assembled chain rooted at the
// sink of L_k.
double bs_chain_probability(const BlockClass &cls, std::span<const Link> links, std::size_t order = 0,
                            double tol = 1e-4);

// mass[m - 1] = total p_L (labelled) or q_L (unlabelled) over links with
// |L| = m, for m = 1..max_size, from the link series C B''(C) or
// C Z_1(C(z), C(z^2), ...) evaluated coefficientwise at rho. These sum to 1.
std::vector<double> link_mass_by_size(const BlockClass &cls, const SingularityData &sing, int max_size,
                                      std::size_t order = 0);

struct LinkCutoff {
    int max_size = 0;      // smallest M with estimated tail mass <= epsilon
    double tail = 0;       // estimated mass of links with |L| > max_size
    bool extrapolated = false; // tail beyond the series order, from kappa / sqrt(M)
};

// Size cutoff for the link measure. The tail 1 - S_M decays like
// kappa / sqrt(M); kappa is read off at the series order when the cutoff
// lies beyond it.
LinkCutoff link_size_cutoff(const BlockClass &cls, const SingularityData &sing, double epsilon,
                            std::size_t order = 0);
double link_tail_estimate(const BlockClass &cls, const SingularityData &sing, int max_size,
                          std::size_t order = 0);

struct LevelMass {
    double ratio = 0;        // T^(k)_N / (N C_N)
    double extrapolated = 0; // limit as N -> infinity
};

// Share of vertices within level < k of the root, which is the mass missing
// from the k-chain measures. Tends to zero.
LevelMass level_mass_deficit(const BlockClass &cls, int k, std::size_t order = 0);

// Draws chains of independent links from p_L or q_L conditioned on
// |L| <= max_size. With max_size = 0 the cutoff comes from epsilon; an
// explicit cutoff whose tail mass exceeds epsilon is rejected.
class LimitChainSampler {
public:
    LimitChainSampler(const BlockClass &cls, const SingularityData &sing, ChainMode mode, double epsilon = 1e-3,
                      int max_size = 0);

    ChainPrefix sample(int k, std::mt19937_64 &rng) const;
    Link sample_link(std::mt19937_64 &rng) const;

    const LinkCutoff &cutoff() const { return cutoff_; }
    double epsilon() const { return epsilon_; }

private:
    double epsilon_;
    LinkCutoff cutoff_;
    LinkSampler sampler_;
};

ChainPrefix sample_limit_chain(const BlockClass &cls, const SingularityData &sing, int k, ChainMode mode,
                               std::uint64_t seed, double epsilon = 1e-3);

} // namespace bslimits
