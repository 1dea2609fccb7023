#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <gmpxx.h>

#include "bslimits/enumerate.hpp"
#include "bslimits/family.hpp"
#include "bslimits/graph_io.hpp"
#include "bslimits/limits.hpp"
#include "bslimits/metric.hpp"
#include "bslimits/sampling.hpp"
#include "bslimits/solve.hpp"

namespace bslimits::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

BlockClass resolve_class(const ClassOptions &o, Report &r) {
    if (o.name.empty() == o.file.empty()) {
        throw ConfigError("give exactly one of --class and --class-file");
    }
    r.config["order"] = o.order;
    if (!o.file.empty()) {
        const std::string text = read_file(o.file);
        r.config["class_file"] = o.file;
        r.inputs += text;
        try {
            return load_class_json(text);
        } catch (const std::exception &e) {
            throw ConfigError(o.file + ": " + e.what());
        }
    }
    r.config["class"] = o.name;
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), o.name) == names.end()) {
        std::string all;
        for (const auto &n : names) {
            all += (all.empty() ? "" : ", ") + n;
        }
        throw ConfigError("unknown class '" + o.name + "' (known: " + all + ")");
    }
    return builtin(o.name);
}

std::pair<int, int> parse_range(const std::string &s) {
    try {
        const auto dots = s.find("..");
        std::size_t used = 0;
        if (dots == std::string::npos) {
            const int v = std::stoi(s, &used);
            if (used != s.size() || v < 1) {
                throw ConfigError("");
            }
            return {v, v};
        }
        const int lo = std::stoi(s.substr(0, dots));
        const int hi = std::stoi(s.substr(dots + 2));
        if (lo < 1 || hi < lo) {
            throw ConfigError("");
        }
        return {lo, hi};
    } catch (const std::exception &) {
        throw ConfigError("bad n range '" + s + "' (expected N or LO..HI)");
    }
}

json link_json(const Link &l, const SingularityData &sing, const BlockClass &cls) {
    const bool labelled = cls.kind == ClassKind::labelled;
    return {{"size", l.size()},
            {"automorphisms", l.automorphisms()},
            {"sink", l.sink()},
            {"graph", graph_to_json(l.graph())},
            {labelled ? "p" : "q", labelled ? p_link(l, sing) : q_link(l, sing)}};
}

// Tokens: "leaf" (the size-1 link) or "L<i>", the i-th link (1-based) in
// enumeration order up to size 6.
std::vector<Link> parse_chain(const std::string &text, const BlockClass &cls) {
    std::vector<Link> out;
    if (text.empty() || text == "-") {
        return out;
    }
    std::vector<Link> all;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
        if (all.empty()) {
            all = enumerate_links(cls, 6);
        }
        if (tok == "leaf") {
            out.push_back(all.front());
            continue;
        }
        std::size_t idx = 0;
        try {
            std::size_t used = 0;
            if (tok.size() < 2 || tok[0] != 'L') {
                throw std::invalid_argument(tok);
            }
            idx = std::stoul(tok.substr(1), &used);
            if (used + 1 != tok.size()) {
                throw std::invalid_argument(tok);
            }
        } catch (const std::exception &) {
            throw ConfigError("bad chain token '" + tok + "' (expected leaf or L<i>)");
        }
        if (idx < 1 || idx > all.size()) {
            throw ConfigError("link index " + tok + " outside 1.." + std::to_string(all.size()));
        }
        out.push_back(all[idx - 1]);
    }
    return out;
}

struct Interval {
    double lo, hi;
};

Interval wilson(std::uint64_t hits, std::uint64_t total) {
    if (total == 0) {
        return {0, 1};
    }
    const double z = 1.959963984540054;
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(hits) / n;
    const double denom = 1 + z * z / n;
    const double centre = (p + z * z / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

bool is_tree_class(const BlockClass &cls) { return cls.max_block_nonroot == 1; }

} // namespace

Report cmd_constants(const ConstantsOptions &o) {
    Report r;
    r.command = "constants";
    const BlockClass cls = resolve_class(o.cls, r);
    const SingularityData s = find_singularity(cls, 1e-12, o.cls.order);
    json res = {{"kind", to_string(cls.kind)},
                {"rho", s.rho},
                {"tau", s.tau},
                {"b", s.b},
                {"A", s.A},
                {"truncation_order", s.truncation_order},
                {"residual", s.residual}};
    // The leaf link has size 1, so p = q = rho.
    res["leaf_rooted"] = s.rho;
    if (cls.kind == ClassKind::labelled) {
        res["leaf_bs"] = s.rho;
    } else {
        const auto links = enumerate_links(cls, 1);
        res["leaf_bs"] = bs_chain_probability(cls, links, o.cls.order);
    }
    r.results = res;
    json row = res;
    row["class"] = cls.name;
    r.rows.push_back(row);
    return r;
}

Report cmd_links(const LinksOptions &o) {
    Report r;
    r.command = "links";
    if (o.max_size < 1 || o.max_size > 8) {
        throw ConfigError("--max-size must lie in 1..8");
    }
    r.config["max_size"] = o.max_size;
    const BlockClass cls = resolve_class(o.cls, r);
    const SingularityData s = find_singularity(cls, 1e-12, o.cls.order);
    json list = json::array();
    int i = 0;
    for (const auto &l : enumerate_links(cls, o.max_size)) {
        json j = link_json(l, s, cls);
        j["index"] = "L" + std::to_string(++i);
        r.rows.push_back({{"index", j["index"]},
                          {"size", l.size()},
                          {"automorphisms", l.automorphisms()},
                          {"probability", cls.kind == ClassKind::labelled ? j["p"] : j["q"]},
                          {"graph", format_graph(l.graph())},
                          {"sink", l.sink()}});
        list.push_back(std::move(j));
    }
    r.results = {{"links", list}};
    return r;
}

Report cmd_verify_chain(const VerifyChainOptions &o) {
    Report r;
    r.command = "verify-chain";
    const auto [lo, hi] = parse_range(o.n_range);
    r.config["chain"] = o.chain;
    r.config["n"] = o.n_range;
    r.config["samples"] = o.samples;
    r.config["seed"] = o.seed ? json(*o.seed) : json(nullptr);
    r.config["exhaustive_max"] = o.exhaustive_max;
    const BlockClass cls = resolve_class(o.cls, r);
    const std::vector<Link> links = parse_chain(o.chain, cls);
    const SingularityData s = find_singularity(cls, 1e-12, o.cls.order);
    const ChainMode mode = default_chain_mode(cls);

    json res;
    res["mode"] = mode == ChainMode::labelled ? "labelled" : "unlabelled_rooted";
    res["theory"] = chain_probability(s, links, mode);
    if (mode == ChainMode::unlabelled_rooted && !links.empty()) {
        res["theory_bs"] = bs_chain_probability(cls, links, o.cls.order);
    }
    json chain = json::array();
    for (const auto &l : links) {
        chain.push_back(link_json(l, s, cls));
    }
    res["chain"] = chain;

    const bool tree_links =
        is_tree_class(cls) && std::all_of(links.begin(), links.end(), [](const Link &l) { return l.is_bridge(); });
    int exhaustive_max = o.exhaustive_max;
    if (exhaustive_max == 0) {
        if (tree_links) {
            exhaustive_max = cls.kind == ClassKind::labelled ? 10 : 18;
        } else {
            exhaustive_max = cls.kind == ClassKind::labelled ? 7 : 10;
        }
    }
    std::optional<TreeChainMatcher> matcher;
    if (tree_links) {
        matcher.emplace(links);
    }
    std::optional<UniformSampler> sampler;

    json rows = json::array();
    for (int n = lo; n <= hi; ++n) {
        EventCount ev;
        std::string method;
        if (n <= exhaustive_max) {
            method = "exhaustive";
            if (matcher && cls.kind == ClassKind::labelled) {
                ev = chain_event_labelled_trees(n, *matcher);
            } else if (matcher) {
                ev = chain_event_unlabelled_trees(n, *matcher);
            } else {
                const auto members = cls.kind == ClassKind::labelled ? all_class_members_labelled(n, cls)
                                                                     : all_unlabelled_rooted_members(n, cls);
                for (const auto &g : members) {
                    ev.total++;
                    ev.hits += matches_chain(g, links, cls) ? 1 : 0;
                }
            }
        } else {
            if (o.samples == 0 || !o.seed) {
                throw ConfigError("n = " + std::to_string(n) +
                                  " is beyond exhaustive enumeration; give --samples and --seed");
            }
            method = "sampled";
            if (!sampler) {
                sampler.emplace(cls, hi);
            }
            gmp_randclass rng(gmp_randinit_mt);
            rng.seed(static_cast<unsigned long>(*o.seed * 1000003ULL + static_cast<std::uint64_t>(n)));
            for (std::uint64_t i = 0; i < o.samples; ++i) {
                const RootedGraph g = sampler->sample(n, rng);
                ev.total++;
                ev.hits += (matcher ? matcher->matches(g) : matches_chain(g, links, cls)) ? 1 : 0;
            }
        }
        const Interval ci = wilson(ev.hits, ev.total);
        json row = {{"n", n},
                    {"method", method},
                    {"hits", ev.hits},
                    {"total", ev.total},
                    {"frequency", ev.fraction()},
                    {"ci_low", ci.lo},
                    {"ci_high", ci.hi},
                    {"theory", res["theory"]},
                    {"abs_diff", std::abs(ev.fraction() - res["theory"].get<double>())}};
        r.rows.push_back(row);
        rows.push_back(row);
    }
    res["rows"] = rows;
    r.results = res;
    return r;
}

Report cmd_sample_chain(const SampleChainOptions &o) {
    Report r;
    r.command = "sample-chain";
    if (!o.seed) {
        throw ConfigError("sample-chain needs --seed");
    }
    if (o.k < 1 || o.samples < 1 || !(o.epsilon > 0 && o.epsilon < 1)) {
        throw ConfigError("need k >= 1, samples >= 1 and 0 < epsilon < 1");
    }
    r.config["k"] = o.k;
    r.config["samples"] = o.samples;
    r.config["seed"] = *o.seed;
    r.config["epsilon"] = o.epsilon;
    const BlockClass cls = resolve_class(o.cls, r);
    const SingularityData s = find_singularity(cls, 1e-12, o.cls.order);
    const LimitChainSampler sampler(cls, s, default_chain_mode(cls), o.epsilon);
    std::mt19937_64 rng(*o.seed);
    json chains = json::array();
    for (std::uint64_t i = 0; i < o.samples; ++i) {
        const ChainPrefix c = sampler.sample(o.k, rng);
        json sizes = json::array();
        for (const auto &l : c.links) {
            sizes.push_back(l.size());
        }
        chains.push_back({{"sizes", sizes}, {"sinks", c.sinks}, {"graph", graph_to_json(c.assembled)}});
        r.rows.push_back({{"sample", i}, {"total_size", c.total_size()}, {"sizes", sizes.dump()},
                          {"graph", format_graph(c.assembled)}});
    }
    r.results = {{"cutoff", sampler.cutoff().max_size},
                 {"tail", sampler.cutoff().tail},
                 {"extrapolated", sampler.cutoff().extrapolated},
                 {"chains", chains}};
    return r;
}

namespace {

GraphFamily parse_or_config(const std::string &text, const char *which) {
    try {
        return parse_family(text);
    } catch (const FamilyParseError &e) {
        throw ConfigError(std::string(which) + " \"" + text + "\": " + e.what());
    }
}

json code_list(const std::vector<CanonicalCode> &codes, std::size_t cap) {
    json out = json::array();
    for (std::size_t i = 0; i < codes.size() && i < cap; ++i) {
        out.push_back(format_graph(decode_canonical(codes[i])));
    }
    return out;
}

} // namespace

Report cmd_metric(const MetricOptions &o) {
    Report r;
    r.command = "metric";
    r.config["a"] = o.a;
    r.config["b"] = o.b;
    r.config["rmax"] = o.rmax;
    if (o.rmax < 1 || o.rmax > kProfileBound) {
        throw ConfigError("--rmax must lie in 1.." + std::to_string(kProfileBound));
    }
    const GraphFamily fa = parse_or_config(o.a, "family A");
    const GraphFamily fb = parse_or_config(o.b, "family B");
    Radius rad;
    try {
        rad = radius_similarity(fa, fb, o.rmax);
    } catch (const std::out_of_range &e) {
        throw ConfigError(e.what());
    }
    json res = {{"r", rad.r},
                {"at_least", rad.at_least},
                {"r_text", rad.at_least ? ">= " + std::to_string(rad.r) : std::to_string(rad.r)},
                {"d", 1.0 / rad.r},
                {"d_upper_bound", rad.at_least},
                {"agree", rad.agree},
                {"non_monotone", rad.non_monotone()},
                {"a", fa.to_string()},
                {"b", fb.to_string()}};
    if (!rad.at_least) {
        const int s = rad.r + 1;
        const auto pa = rcis_profile(fa, s);
        const auto pb = rcis_profile(fb, s);
        std::vector<CanonicalCode> only_a, only_b;
        std::set_difference(pa.codes.begin(), pa.codes.end(), pb.codes.begin(), pb.codes.end(),
                            std::back_inserter(only_a));
        std::set_difference(pb.codes.begin(), pb.codes.end(), pa.codes.begin(), pa.codes.end(),
                            std::back_inserter(only_b));
        res["witness"] = {{"size", s},
                          {"only_a_count", only_a.size()},
                          {"only_b_count", only_b.size()},
                          {"only_a", code_list(only_a, 10)},
                          {"only_b", code_list(only_b, 10)}};
    }
    r.results = res;
    r.rows.push_back({{"a", o.a}, {"b", o.b}, {"r", res["r_text"]}, {"d", res["d"]},
                      {"d_upper_bound", rad.at_least}});
    return r;
}

Report cmd_core(const CoreOptions &o) {
    Report r;
    r.command = "core";
    r.config["graph_file"] = o.graph_file;
    const std::string text = read_file(o.graph_file);
    r.inputs = text;
    OmegaMarkedGraph g;
    try {
        const json j = json::parse(text);
        g.base = graph_from_json(j.contains("graph") ? j.at("graph") : j);
        if (j.contains("marked")) {
            g.marked = j.at("marked").get<std::vector<int>>();
        }
    } catch (const std::exception &e) {
        throw ConfigError(o.graph_file + ": " + e.what());
    }
    const Core c = core(g);
    r.results = {{"ground", c.ground},
                 {"first", c.first},
                 {"vertices", c.vertices},
                 {"infinite", c.infinite},
                 {"core", graph_to_json(c.graph)}};
    r.rows.push_back({{"ground", json(c.ground).dump()},
                      {"first", json(c.first).dump()},
                      {"core", format_graph(c.graph)}});
    return r;
}

Report cmd_census(const CensusOptions &o) {
    Report r;
    r.command = "census";
    r.config["input"] = o.input;
    r.config["k"] = o.k;
    if (o.k < 1 || o.k > kProfileBound) {
        throw ConfigError("--k must lie in 1.." + std::to_string(kProfileBound));
    }
    const std::string text = read_file(o.input);
    r.inputs = text;
    std::vector<GraphFamily> fams;
    try {
        std::istringstream in(text);
        for (auto &g : read_graph_lines(in)) {
            fams.push_back(GraphFamily::finite(std::move(g)));
        }
    } catch (const std::exception &e) {
        throw ConfigError(o.input + ": " + e.what());
    }
    const BallCensus c = ball_census(fams, o.k);
    r.results = {{"graphs", fams.size()},
                 {"parts", c.parts},
                 {"part_count", c.parts.size()},
                 {"types", c.types},
                 {"within_bound", c.within_bound()}};
    for (std::size_t i = 0; i < c.parts.size(); ++i) {
        r.rows.push_back({{"part", i}, {"size", c.parts[i].size()}, {"members", json(c.parts[i]).dump()}});
    }
    return r;
}

} // namespace bslimits::cli
