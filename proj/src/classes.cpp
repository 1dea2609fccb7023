#include "bslimits/classes.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "bslimits/blocks.hpp"
#include "bslimits/canonical.hpp"
#include "bslimits/graph_io.hpp"

namespace bslimits {

std::string to_string(ClassKind kind) {
    return kind == ClassKind::labelled ? "labelled" : "unlabelled";
}

CycleIndex CycleIndex::of_group(std::span<const std::vector<int>> perms, int skip) {
    if (perms.empty()) {
        throw std::invalid_argument("cycle index of an empty group");
    }
    CycleIndex out;
    const Rational weight(1, static_cast<unsigned long>(perms.size()));
    for (const auto &p : perms) {
        const int n = static_cast<int>(p.size());
        std::vector<char> seen(n, 0);
        Monomial mono;
        for (int v = 0; v < n; ++v) {
            if (seen[v] || v == skip) {
                continue;
            }
            int len = 0;
            for (int w = v; !seen[w]; w = p[w]) {
                seen[w] = 1;
                ++len;
            }
            if (static_cast<int>(mono.size()) < len) {
                mono.resize(len, 0);
            }
            ++mono[len - 1];
        }
        out.add(mono, weight);
    }
    return out;
}

void CycleIndex::add(const Monomial &m, const Rational &c) {
    Monomial key = m;
    while (!key.empty() && key.back() == 0) {
        key.pop_back();
    }
    auto &slot = terms_[key];
    slot += c;
    if (slot == 0) {
        terms_.erase(key);
    }
}

CycleIndex &CycleIndex::operator+=(const CycleIndex &o) {
    for (const auto &[m, c] : o.terms_) {
        add(m, c);
    }
    return *this;
}

Rational CycleIndex::total_weight() const {
    Rational w = 0;
    for (const auto &[m, c] : terms_) {
        w += c;
    }
    return w;
}

int CycleIndex::num_variables() const {
    int k = 0;
    for (const auto &[m, c] : terms_) {
        k = std::max(k, static_cast<int>(m.size()));
    }
    return k;
}

std::string CycleIndex::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << c.get_str();
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] > 0) {
                os << "*s" << k + 1;
                if (m[k] > 1) {
                    os << '^' << m[k];
                }
            }
        }
    }
    return first ? "0" : os.str();
}

CycleIndex cycle_index_derived_block(const RootedGraph &b) {
    if (!is_biconnected_block(b)) {
        throw std::invalid_argument("cycle_index_derived_block: block is neither K2 nor 2-connected");
    }
    const auto perms = all_automorphisms(b);
    return CycleIndex::of_group(perms, b.root());
}

std::vector<DerivedBlock> derived_blocks_of(const RootedGraph &b) {
    if (!is_biconnected_block(b)) {
        throw std::invalid_argument("derived_blocks_of: block is neither K2 nor 2-connected");
    }
    std::vector<DerivedBlock> out;
    std::set<CanonicalCode> seen;
    RootedGraph h = b;
    for (int v = 0; v < b.size(); ++v) {
        h.set_root(v);
        if (!seen.insert(canonical_rooted(h)).second) {
            continue;
        }
        DerivedBlock d;
        d.block = h;
        d.stabilizer = all_automorphisms(h);
        d.stabilizer_order = d.stabilizer.size();
        out.push_back(std::move(d));
    }
    return out;
}

ExactSeries BlockClass::bprime_series(std::size_t n) const {
    if (kind != ClassKind::labelled) {
        throw std::logic_error("bprime_series: class is unlabelled");
    }
    return bprime_at(ExactSeries::monomial(1, n));
}

ExactSeries BlockClass::bdoubleprime_series(std::size_t n) const {
    if (kind != ClassKind::labelled) {
        throw std::logic_error("bdoubleprime_series: class is unlabelled");
    }
    return bdoubleprime_at(ExactSeries::monomial(1, n));
}

ExactSeries BlockClass::z_diagonal_series(std::size_t n) const {
    if (kind != ClassKind::unlabelled) {
        throw std::logic_error("z_diagonal_series: class is labelled");
    }
    std::vector<ExactSeries> s;
    for (int k = 1; k <= num_variables; ++k) {
        s.push_back(ExactSeries::monomial(k, n));
    }
    return z_at<ExactSeries>(s);
}

void BlockClass::check_order(std::size_t n) const {
    if (valid_order && static_cast<int>(n) > *valid_order) {
        throw std::domain_error("class '" + name + "' is only determined to order " +
                                std::to_string(*valid_order) + ", requested " + std::to_string(n));
    }
}

namespace {

DerivedBlock derived_k2() {
    DerivedBlock d;
    d.block = complete_graph(2);
    d.stabilizer = {{0, 1}};
    return d;
}

DerivedBlock derived_cycle(int nonroot) {
    const int n = nonroot + 1;
    DerivedBlock d;
    d.block = cycle_graph(n);
    std::vector<int> id(n), refl(n);
    for (int v = 0; v < n; ++v) {
        id[v] = v;
        refl[v] = (n - v) % n;
    }
    d.stabilizer = {id, refl};
    d.stabilizer_order = 2;
    return d;
}

DerivedBlock derived_clique(int nonroot) {
    DerivedBlock d;
    d.block = complete_graph(nonroot + 1);
    std::uint64_t f = 1;
    for (int i = 2; i <= nonroot; ++i) {
        f *= static_cast<std::uint64_t>(i);
    }
    d.stabilizer_order = f;
    if (nonroot <= 6) {
        d.stabilizer = all_automorphisms(d.block);
    }
    return d;
}

bool is_cycle_or_edge(const RootedGraph &g) {
    if (g.size() == 2) {
        return g.edge_count() == 1;
    }
    if (g.size() < 3 || !is_connected(g)) {
        return false;
    }
    for (int v = 0; v < g.size(); ++v) {
        if (g.degree(v) != 2) {
            return false;
        }
    }
    return true;
}

bool is_clique(const RootedGraph &g) {
    const auto n = static_cast<std::size_t>(g.size());
    return n >= 2 && g.edge_count() == n * (n - 1) / 2;
}

template <class R>
using Args = std::span<const R>;

template <class C>
C half() {
    return C(C(1) / C(2));
}

struct TreeB {
    template <class R>
    R operator()(Args<R> a) const {
        return a[0];
    }
};

struct CactusB {
    template <class R>
    R operator()(Args<R> a) const {
        using C = scalar_t<R>;
        const R &y = a[0];
        return y + scale(y * y * geometric(y), half<C>());
    }
};

struct CliqueB {
    template <class R>
    R operator()(Args<R> a) const {
        return expm1_of(a[0]);
    }
};

// s1 + 1/2 [s1^2/(1-s1) + s2/(1-s2) + s1 s2/(1-s2)]: identity and
// reflection terms of the derived cycles C_k, k >= 3.
struct CactusZ {
    template <class R>
    R operator()(Args<R> a) const {
        using C = scalar_t<R>;
        const R &s1 = a[0];
        const R &s2 = a[1];
        const R g2 = geometric(s2);
        R rest = s1 * s1 * geometric(s1) + s2 * g2 + s1 * s2 * g2;
        return s1 + scale(rest, half<C>());
    }
};

struct PolynomialB {
    std::vector<Rational> coeffs;

    template <class R>
    R operator()(Args<R> a) const {
        using C = scalar_t<R>;
        const R &y = a[0];
        R acc = zero_like(y);
        for (std::size_t k = coeffs.size(); k-- > 1;) {
            acc = add_scalar(acc, from_rational<C>(coeffs[k])) * y;
        }
        return acc;
    }
};

struct CycleIndexZ {
    std::shared_ptr<const CycleIndex> z;

    template <class R>
    R operator()(Args<R> a) const {
        return z->evaluate(a);
    }
};

void validate(const BlockClass &c) {
    const std::size_t n = 6;
    if (c.kind == ClassKind::labelled) {
        const auto bp = c.bprime_series(n);
        if (bp[0] != 0) {
            throw std::invalid_argument("class '" + c.name + "': B'(0) must be 0");
        }
        if (bp[1] != 1) {
            throw std::invalid_argument("class '" + c.name + "': K2 must belong to the class ([y]B' = 1)");
        }
        if (derivative(bp) != c.bdoubleprime_series(n - 1)) {
            throw std::logic_error("class '" + c.name + "': B'' is not the derivative of B'");
        }
        for (std::size_t k = 1; k <= n; ++k) {
            if (bp[k] < 0) {
                throw std::invalid_argument("class '" + c.name + "': negative coefficient in B'");
            }
        }
        if (c.has_block_generator()) {
            for (int k = 1; k <= static_cast<int>(n); ++k) {
                Rational sum = 0;
                for (const auto &d : c.derived_blocks(k)) {
                    sum += Rational(1, static_cast<unsigned long>(d.stabilizer_order));
                }
                if (c.valid_order && k + 1 > *c.valid_order) {
                    break;
                }
                if (sum != bp[k]) {
                    throw std::logic_error("class '" + c.name + "': block generator disagrees with B' at y^" +
                                           std::to_string(k));
                }
            }
        }
        return;
    }
    const auto zd = c.z_diagonal_series(n);
    if (zd[0] != 0 || zd[1] != 1) {
        throw std::invalid_argument("class '" + c.name + "': Z_B' must have no constant term and contain K2");
    }
    if (c.has_block_generator()) {
        for (int k = 1; k <= static_cast<int>(n); ++k) {
            if (c.valid_order && k + 1 > *c.valid_order) {
                break;
            }
            if (Rational(static_cast<long>(c.derived_blocks(k).size())) != zd[k]) {
                throw std::logic_error("class '" + c.name + "': block generator disagrees with Z_B' at z^" +
                                       std::to_string(k));
            }
        }
    }
}

BlockClass make_trees(ClassKind kind) {
    BlockClass c;
    c.kind = kind;
    c.name = kind == ClassKind::labelled ? "trees_labelled" : "trees_unlabelled";
    c.bprime = RingFunction(TreeB{});
    c.z_bprime = RingFunction(TreeB{});
    c.num_variables = 1;
    c.derived_blocks = [](int k) {
        return k == 1 ? std::vector<DerivedBlock>{derived_k2()} : std::vector<DerivedBlock>{};
    };
    c.max_block_nonroot = 1;
    c.contains_block = [](const RootedGraph &g) { return g.size() == 2 && g.edge_count() == 1; };
    c.default_order = 200;
    return c;
}

BlockClass make_cacti(ClassKind kind) {
    BlockClass c;
    c.kind = kind;
    c.name = kind == ClassKind::labelled ? "cacti_labelled" : "cacti_unlabelled";
    c.bprime = RingFunction(CactusB{});
    c.z_bprime = RingFunction(CactusZ{});
    c.num_variables = 2;
    c.y_radius = 1.0;
    c.derived_blocks = [](int k) {
        if (k < 1) {
            return std::vector<DerivedBlock>{};
        }
        return std::vector<DerivedBlock>{k == 1 ? derived_k2() : derived_cycle(k)};
    };
    c.contains_block = is_cycle_or_edge;
    c.default_order = 120;
    return c;
}

BlockClass make_blockgraphs() {
    BlockClass c;
    c.kind = ClassKind::labelled;
    c.name = "blockgraphs_labelled";
    c.bprime = RingFunction(CliqueB{});
    c.derived_blocks = [](int k) {
        return k < 1 ? std::vector<DerivedBlock>{} : std::vector<DerivedBlock>{derived_clique(k)};
    };
    c.contains_block = is_clique;
    c.default_order = 120;
    return c;
}

} // namespace

std::vector<std::string> builtin_names() {
    return {"trees_labelled", "cacti_labelled", "blockgraphs_labelled", "trees_unlabelled", "cacti_unlabelled"};
}

BlockClass builtin(std::string_view name) {
    BlockClass c;
    if (name == "trees_labelled") {
        c = make_trees(ClassKind::labelled);
    } else if (name == "trees_unlabelled") {
        c = make_trees(ClassKind::unlabelled);
    } else if (name == "cacti_labelled") {
        c = make_cacti(ClassKind::labelled);
    } else if (name == "cacti_unlabelled") {
        c = make_cacti(ClassKind::unlabelled);
    } else if (name == "blockgraphs_labelled") {
        c = make_blockgraphs();
    } else {
        std::string known;
        for (const auto &n : builtin_names()) {
            known += (known.empty() ? "" : ", ") + n;
        }
        throw std::invalid_argument("unknown class '" + std::string(name) + "' (known: " + known + ")");
    }
    validate(c);
    return c;
}

BlockClass custom_labelled(std::vector<Rational> coeffs, std::optional<int> valid_order, std::string name) {
    while (coeffs.size() > 2 && coeffs.back() == 0) {
        coeffs.pop_back();
    }
    if (coeffs.size() < 2) {
        throw std::invalid_argument("custom_labelled: need at least the coefficients of y^0 and y^1");
    }
    const int data_order = static_cast<int>(coeffs.size());
    if (valid_order && (*valid_order < 1 || *valid_order > data_order)) {
        throw std::invalid_argument("custom_labelled: valid_order must lie in [1, " + std::to_string(data_order) +
                                    "] for coefficients up to y^" + std::to_string(data_order - 1));
    }
    BlockClass c;
    c.kind = ClassKind::labelled;
    c.name = std::move(name);
    c.bprime = RingFunction(PolynomialB{coeffs});
    c.valid_order = valid_order;
    validate(c);
    return c;
}

BlockClass custom_from_blocks(ClassKind kind, std::vector<RootedGraph> blocks, std::optional<int> valid_order,
                              std::string name) {
    if (blocks.empty()) {
        throw std::invalid_argument("custom class: empty block list");
    }
    std::set<CanonicalCode> codes;
    int max_size = 0;
    bool has_k2 = false;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto &b = blocks[i];
        if (!is_biconnected_block(b)) {
            throw std::invalid_argument("custom class: block " + std::to_string(i) +
                                        " is neither K2 nor 2-connected");
        }
        if (!codes.insert(canonical_unrooted(b)).second) {
            throw std::invalid_argument("custom class: block " + std::to_string(i) +
                                        " is isomorphic to an earlier block");
        }
        has_k2 = has_k2 || b.size() == 2;
        max_size = std::max(max_size, b.size());
    }
    if (!has_k2) {
        throw std::invalid_argument("custom class: K2 must be one of the blocks");
    }
    if (valid_order && (*valid_order < 1 || *valid_order > max_size)) {
        throw std::invalid_argument("custom class: valid_order must lie in [1, " + std::to_string(max_size) + "]");
    }

    auto by_size = std::make_shared<std::vector<std::vector<DerivedBlock>>>(max_size);
    std::vector<Rational> coeffs(max_size, Rational(0));
    auto z = std::make_shared<CycleIndex>();
    for (const auto &b : blocks) {
        for (auto &d : derived_blocks_of(b)) {
            coeffs[d.nonroot()] += Rational(1, static_cast<unsigned long>(d.stabilizer_order));
            *z += CycleIndex::of_group(d.stabilizer, d.block.root());
            (*by_size)[d.nonroot()].push_back(std::move(d));
        }
    }

    BlockClass c;
    c.kind = kind;
    c.name = std::move(name);
    c.bprime = RingFunction(PolynomialB{coeffs});
    c.z_bprime = RingFunction(CycleIndexZ{z});
    c.num_variables = std::max(1, z->num_variables());
    c.valid_order = valid_order;
    c.derived_blocks = [by_size](int k) {
        if (k < 1 || k >= static_cast<int>(by_size->size())) {
            return std::vector<DerivedBlock>{};
        }
        return (*by_size)[k];
    };
    c.max_block_nonroot = max_size - 1;
    auto code_set = std::make_shared<const std::set<CanonicalCode>>(std::move(codes));
    c.contains_block = [code_set](const RootedGraph &g) {
        return code_set->count(canonical_unrooted(g)) > 0;
    };
    validate(c);
    return c;
}

BlockClass load_class_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("class file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw std::invalid_argument("class file: missing string field 'kind'");
    }
    const auto kind_text = j["kind"].get<std::string>();
    if (kind_text != "labelled" && kind_text != "unlabelled") {
        throw std::invalid_argument("class file: 'kind' must be \"labelled\" or \"unlabelled\"");
    }
    const ClassKind kind = kind_text == "labelled" ? ClassKind::labelled : ClassKind::unlabelled;
    std::optional<int> valid_order;
    if (j.contains("valid_order")) {
        if (!j["valid_order"].is_number_integer()) {
            throw std::invalid_argument("class file: 'valid_order' must be an integer");
        }
        valid_order = j["valid_order"].get<int>();
    }
    std::string name = j.value("name", std::string("custom_") + kind_text);
    const bool has_bprime = j.contains("bprime");
    const bool has_blocks = j.contains("blocks");
    if (has_bprime == has_blocks) {
        throw std::invalid_argument("class file: give exactly one of 'bprime' and 'blocks'");
    }
    if (has_bprime) {
        if (kind != ClassKind::labelled) {
            throw std::invalid_argument("class file: 'bprime' describes a labelled class");
        }
        std::vector<Rational> coeffs;
        for (const auto &e : j["bprime"]) {
            if (e.is_string()) {
                coeffs.push_back(parse_rational(e.get<std::string>()));
            } else if (e.is_number_integer()) {
                coeffs.emplace_back(e.get<long>());
            } else {
                throw std::invalid_argument("class file: 'bprime' entries must be \"p/q\" strings or integers");
            }
        }
        return custom_labelled(std::move(coeffs), valid_order, std::move(name));
    }
    if (!j["blocks"].is_array()) {
        throw std::invalid_argument("class file: 'blocks' must be an array");
    }
    std::vector<RootedGraph> blocks;
    for (const auto &b : j["blocks"]) {
        blocks.push_back(graph_from_json(b));
    }
    return custom_from_blocks(kind, std::move(blocks), valid_order, std::move(name));
}

BlockClass load_class_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open class file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return load_class_json(buf.str());
}

} // namespace bslimits
