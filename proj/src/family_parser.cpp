#include "bslimits/family.hpp"

#include <cctype>
#include <charconv>

namespace bslimits {

GraphFamily GraphFamily::finite(RootedGraph g) {
    GraphFamily f;
    f.kind = Kind::finite;
    f.graph = std::move(g);
    return f;
}

GraphFamily GraphFamily::path(int edges) {
    if (edges < 0) {
        throw std::invalid_argument("path length must be nonnegative");
    }
    GraphFamily f;
    f.kind = Kind::path;
    f.n = edges;
    return f;
}

GraphFamily GraphFamily::ray() {
    GraphFamily f;
    f.kind = Kind::ray;
    return f;
}

GraphFamily GraphFamily::star(int leaves) {
    if (leaves < 0) {
        throw std::invalid_argument("star size must be nonnegative");
    }
    GraphFamily f;
    f.kind = Kind::star;
    f.n = leaves;
    return f;
}

GraphFamily GraphFamily::star_inf() {
    GraphFamily f;
    f.kind = Kind::star_inf;
    return f;
}

GraphFamily GraphFamily::fan(int path_vertices) {
    if (path_vertices < 0) {
        throw std::invalid_argument("fan order must be nonnegative");
    }
    GraphFamily f;
    f.kind = Kind::fan;
    f.n = path_vertices;
    return f;
}

GraphFamily GraphFamily::fan_inf() {
    GraphFamily f;
    f.kind = Kind::fan_inf;
    return f;
}

GraphFamily GraphFamily::join(std::vector<GraphFamily> parts) {
    if (parts.empty()) {
        throw std::invalid_argument("join needs at least one part");
    }
    GraphFamily f;
    f.kind = Kind::join;
    f.parts = std::move(parts);
    return f;
}

GraphFamily GraphFamily::join_all_paths() {
    GraphFamily f;
    f.kind = Kind::join_all_paths;
    return f;
}

GraphFamily GraphFamily::join_all_fans() {
    GraphFamily f;
    f.kind = Kind::join_all_fans;
    return f;
}

GraphFamily GraphFamily::rado() {
    GraphFamily f;
    f.kind = Kind::rado;
    return f;
}

bool GraphFamily::is_finite() const {
    switch (kind) {
    case Kind::finite:
    case Kind::path:
    case Kind::star:
    case Kind::fan:
        return true;
    case Kind::join:
        for (const auto &p : parts) {
            if (!p.is_finite()) {
                return false;
            }
        }
        return true;
    default:
        return false;
    }
}

RootedGraph GraphFamily::materialise() const {
    switch (kind) {
    case Kind::finite:
        return graph;
    case Kind::path:
        return path_graph(n + 1, 0);
    case Kind::star:
        return star_graph(n);
    case Kind::fan: {
        RootedGraph g(n + 1, 0);
        for (int i = 1; i <= n; ++i) {
            g.add_edge(0, i);
            if (i > 1) {
                g.add_edge(i - 1, i);
            }
        }
        return g;
    }
    case Kind::join: {
        std::vector<RootedGraph> gs;
        for (const auto &p : parts) {
            gs.push_back(p.materialise());
        }
        return bslimits::join(gs);
    }
    default:
        throw std::invalid_argument("family " + to_string() + " is infinite");
    }
}

std::string GraphFamily::to_string() const {
    switch (kind) {
    case Kind::finite: {
        std::string s = "graph(" + std::to_string(graph.size()) + ";";
        // Root moved to vertex 0 by swapping labels.
        auto relabel = [&](int v) { return v == graph.root() ? 0 : (v == 0 ? graph.root() : v); };
        bool first = true;
        for (auto [u, v] : graph.edges()) {
            s += first ? " " : ", ";
            first = false;
            s += std::to_string(relabel(u)) + "-" + std::to_string(relabel(v));
        }
        return s + ")";
    }
    case Kind::path:
        return "path(" + std::to_string(n) + ")";
    case Kind::ray:
        return "ray";
    case Kind::star:
        return "star(" + std::to_string(n) + ")";
    case Kind::star_inf:
        return "star(inf)";
    case Kind::fan:
        return "fan(" + std::to_string(n) + ")";
    case Kind::fan_inf:
        return "fan(inf)";
    case Kind::join: {
        std::string s = "join(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            s += (i ? ", " : "") + parts[i].to_string();
        }
        return s + ")";
    }
    case Kind::join_all_paths:
        return "joinall(paths)";
    case Kind::join_all_fans:
        return "joinall(fans)";
    case Kind::rado:
        return "rado";
    }
    return "?";
}

FamilyParseError::FamilyParseError(const std::string &what, std::size_t pos)
    : std::invalid_argument("at position " + std::to_string(pos) + ": " + what), position(pos) {}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    GraphFamily parse() {
        GraphFamily f = family();
        skip();
        if (i_ != s_.size()) {
            throw FamilyParseError("unexpected '" + std::string(1, s_[i_]) + "' after family", i_);
        }
        return f;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
            ++i_;
        }
    }

    bool accept(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            throw FamilyParseError(std::string("expected '") + c + "'", i_);
        }
    }

    std::string word() {
        skip();
        const std::size_t start = i_;
        while (i_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
            ++i_;
        }
        return std::string(s_.substr(start, i_ - start));
    }

    int integer() {
        skip();
        const std::size_t start = i_;
        int v = 0;
        auto [p, ec] = std::from_chars(s_.data() + i_, s_.data() + s_.size(), v);
        if (ec != std::errc() || v < 0) {
            throw FamilyParseError("expected a nonnegative integer", start);
        }
        i_ = static_cast<std::size_t>(p - s_.data());
        return v;
    }

    // INT or "inf"; returns -1 for inf.
    int size_or_inf() {
        skip();
        if (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) {
            const std::size_t start = i_;
            if (word() != "inf") {
                throw FamilyParseError("expected an integer or 'inf'", start);
            }
            return -1;
        }
        return integer();
    }

    GraphFamily family() {
        skip();
        const std::size_t start = i_;
        const std::string name = word();
        if (name.empty()) {
            throw FamilyParseError("expected a family name", start);
        }
        if (name == "ray") {
            return GraphFamily::ray();
        }
        if (name == "rado") {
            return GraphFamily::rado();
        }
        if (name == "path" || name == "cycle" || name == "complete") {
            expect('(');
            const std::size_t at = i_;
            const int k = integer();
            expect(')');
            if (name == "path") {
                return GraphFamily::path(k);
            }
            if (name == "cycle") {
                if (k < 3) {
                    throw FamilyParseError("cycle needs at least 3 vertices", at);
                }
                return GraphFamily::finite(cycle_graph(k));
            }
            if (k < 1) {
                throw FamilyParseError("complete graph needs a vertex", at);
            }
            return GraphFamily::finite(complete_graph(k));
        }
        if (name == "star" || name == "fan") {
            expect('(');
            const int k = size_or_inf();
            expect(')');
            if (name == "star") {
                return k < 0 ? GraphFamily::star_inf() : GraphFamily::star(k);
            }
            return k < 0 ? GraphFamily::fan_inf() : GraphFamily::fan(k);
        }
        if (name == "join") {
            expect('(');
            std::vector<GraphFamily> parts{family()};
            while (accept(',')) {
                parts.push_back(family());
            }
            expect(')');
            return GraphFamily::join(std::move(parts));
        }
        if (name == "joinall") {
            expect('(');
            skip();
            const std::size_t at = i_;
            const std::string what = word();
            expect(')');
            if (what == "paths") {
                return GraphFamily::join_all_paths();
            }
            if (what == "fans") {
                return GraphFamily::join_all_fans();
            }
            throw FamilyParseError("joinall takes 'paths' or 'fans'", at);
        }
        if (name == "graph") {
            expect('(');
            const std::size_t at = i_;
            const int n = integer();
            if (n < 1) {
                throw FamilyParseError("graph needs at least one vertex", at);
            }
            expect(';');
            RootedGraph g(n, 0);
            skip();
            if (i_ < s_.size() && s_[i_] != ')') {
                do {
                    skip();
                    const std::size_t e = i_;
                    const int u = integer();
                    expect('-');
                    const int v = integer();
                    try {
                        g.add_edge(u, v);
                    } catch (const std::exception &ex) {
                        throw FamilyParseError(std::string("bad edge: ") + ex.what(), e);
                    }
                } while (accept(','));
            }
            expect(')');
            return GraphFamily::finite(std::move(g));
        }
        throw FamilyParseError("unknown family '" + name + "'", start);
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

} // namespace

GraphFamily parse_family(std::string_view text) { return Parser(text).parse(); }

} // namespace bslimits
