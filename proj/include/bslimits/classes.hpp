#pragma once

// Block-stable graph classes described by their derived block series:
// B'(y) for labelled classes, the cycle index Z_B'(s1, s2, ...) for
// unlabelled ones. A derived block is a block with one distinguished
// vertex that is not counted (the attachment point, used as the root).

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bslimits/graph.hpp"
#include "bslimits/rational.hpp"
#include "bslimits/ring_function.hpp"
#include "bslimits/series.hpp"

namespace bslimits {

enum class ClassKind { labelled, unlabelled };

std::string to_string(ClassKind kind);

// Polynomial in s_1, s_2, ... with rational coefficients. A monomial is
// stored as its exponent vector (a_1, a_2, ...) with trailing zeros removed.
class CycleIndex {
public:
    using Monomial = std::vector<int>;

    // (1/|G|) sum over g in G of prod_k s_k^{c_k(g)}, where c_k counts the
    // k-cycles of g on all points except `skip` (-1: none).
    static CycleIndex of_group(std::span<const std::vector<int>> perms, int skip = -1);

    const std::map<Monomial, Rational> &terms() const { return terms_; }
    void add(const Monomial &m, const Rational &c);
    CycleIndex &operator+=(const CycleIndex &o);
    friend bool operator==(const CycleIndex &a, const CycleIndex &b) { return a.terms_ == b.terms_; }

    Rational total_weight() const; // sum of coefficients
    int num_variables() const;     // largest k with s_k present

    // s[k] is substituted for s_{k+1}; s must cover num_variables().
    template <class R>
    R evaluate(std::span<const R> s) const {
        R acc = zero_like(s[0]);
        for (const auto &[mono, coef] : terms_) {
            R term = one_like(s[0]);
            for (std::size_t k = 0; k < mono.size(); ++k) {
                for (int e = 0; e < mono[k]; ++e) {
                    term = term * s[k];
                }
            }
            acc = acc + scale(term, from_rational<scalar_t<R>>(coef));
        }
        return acc;
    }

    std::string to_string() const;

private:
    std::map<Monomial, Rational> terms_;
};

struct DerivedBlock {
    RootedGraph block; // root = distinguished vertex
    std::uint64_t stabilizer_order = 1;
    // Root-fixing automorphisms; left empty when the group is too large to list.
    std::vector<std::vector<int>> stabilizer;

    int nonroot() const { return block.size() - 1; }
};

// Cycle index of the root stabiliser of Aut(B), counting cycles on the
// non-root vertices. Rejects B that is neither K2 nor 2-connected.
CycleIndex cycle_index_derived_block(const RootedGraph &b);

// Root-orbit representatives of B, each as a derived block.
std::vector<DerivedBlock> derived_blocks_of(const RootedGraph &b);

struct BlockClass {
    ClassKind kind = ClassKind::labelled;
    std::string name;

    // Labelled: B'(y), argument list {y}.
    RingFunction bprime;
    // Unlabelled: Z_B'(s_1, ..., s_m) with m = num_variables.
    RingFunction z_bprime;
    int num_variables = 1;

    // Radius of convergence of B' in y (labelled) or of Z_B' in s_1.
    double y_radius = std::numeric_limits<double>::infinity();

    // Largest order of C*(z) determined by the supplied data; unset for
    // classes given in closed form or by a complete block list.
    std::optional<int> valid_order;

    // Derived blocks with exactly k non-root vertices, one per isomorphism
    // type. Empty function: the class has no block generator.
    std::function<std::vector<DerivedBlock>(int)> derived_blocks;
    // Largest k for which derived_blocks(k) can be nonempty (-1: unbounded).
    int max_block_nonroot = -1;
    // Whether a block (root ignored) is a block of this class.
    std::function<bool(const RootedGraph &)> contains_block;

    int default_order = 120;

    bool has_block_generator() const { return static_cast<bool>(derived_blocks); }

    template <class R>
    R bprime_at(const R &y) const {
        return bprime(std::vector<R>{y});
    }

    // B''(y) through a dual number.
    template <class R>
    R bdoubleprime_at(const R &y) const {
        return bprime(std::vector<Dual<R>>{Dual<R>{y, one_like(y)}}).eps;
    }

    template <class R>
    R z_at(std::span<const R> s) const {
        return z_bprime(s);
    }

    // Partial derivative of Z_B' in s_1.
    template <class R>
    R z_d1_at(std::span<const R> s) const {
        std::vector<Dual<R>> d;
        d.reserve(s.size());
        for (std::size_t k = 0; k < s.size(); ++k) {
            d.push_back({s[k], k == 0 ? one_like(s[k]) : zero_like(s[k])});
        }
        return z_bprime(std::span<const Dual<R>>(d)).eps;
    }

    // B'(y) and B''(y) as exact series in y to order n (labelled).
    ExactSeries bprime_series(std::size_t n) const;
    ExactSeries bdoubleprime_series(std::size_t n) const;

    // Z_B'(y, 0, 0, ...) style check polynomial: Z_B' at s_k = y^k (unlabelled).
    ExactSeries z_diagonal_series(std::size_t n) const;

    // Throws std::domain_error when the requested order is beyond the data.
    void check_order(std::size_t n) const;
};

std::vector<std::string> builtin_names();
BlockClass builtin(std::string_view name);

// B'(y) = sum_k coeffs[k] y^k. Requires coeffs[0] = 0 and coeffs[1] = 1 (K2
// belongs to every class). With `valid_order`, the list is a truncation and
// C* is usable to that order; without it the polynomial is taken as complete.
BlockClass custom_labelled(std::vector<Rational> coeffs, std::optional<int> valid_order = {},
                           std::string name = "custom_labelled");

// Class generated by a list of pairwise non-isomorphic blocks (each K2 or
// 2-connected, K2 required). Without `valid_order` the list is complete.
BlockClass custom_from_blocks(ClassKind kind, std::vector<RootedGraph> blocks,
                              std::optional<int> valid_order = {}, std::string name = "custom");

inline BlockClass custom_unlabelled(std::vector<RootedGraph> blocks, std::optional<int> valid_order = {}) {
    return custom_from_blocks(ClassKind::unlabelled, std::move(blocks), valid_order, "custom_unlabelled");
}

// {"kind": "labelled"|"unlabelled", "bprime": ["p/q", ...]} or
// {"kind": ..., "blocks": [graph, ...]}, optional "valid_order" and "name".
BlockClass load_class_json(std::string_view text);
BlockClass load_class_file(const std::string &path);

} // namespace bslimits
