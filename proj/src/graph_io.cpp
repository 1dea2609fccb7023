#include "bslimits/graph_io.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace bslimits {

nlohmann::json graph_to_json(const RootedGraph &g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : g.edges()) {
        edges.push_back({u, v});
    }
    return {{"n", g.size()}, {"root", g.root()}, {"edges", std::move(edges)}};
}

RootedGraph graph_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw std::invalid_argument("graph: expected an object");
    }
    if (!j.contains("n") || !j["n"].is_number_integer()) {
        throw std::invalid_argument("graph: missing integer field 'n'");
    }
    const int n = j["n"].get<int>();
    if (n < 1) {
        throw std::invalid_argument("graph: 'n' must be positive");
    }
    int root = 0;
    if (j.contains("root")) {
        if (!j["root"].is_number_integer()) {
            throw std::invalid_argument("graph: 'root' must be an integer");
        }
        root = j["root"].get<int>();
    }
    RootedGraph g(n, root);
    if (j.contains("edges")) {
        const auto &edges = j["edges"];
        if (!edges.is_array()) {
            throw std::invalid_argument("graph: 'edges' must be an array");
        }
        for (const auto &e : edges) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
                throw std::invalid_argument("graph: each edge must be a pair of integers");
            }
            g.add_edge(e[0].get<int>(), e[1].get<int>());
        }
    }
    return g;
}

std::string format_graph(const RootedGraph &g) {
    return graph_to_json(g).dump();
}

RootedGraph parse_graph(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("graph: ") + e.what());
    }
    return graph_from_json(j);
}

void write_graph_lines(std::ostream &out, const std::vector<RootedGraph> &graphs) {
    for (const auto &g : graphs) {
        out << format_graph(g) << '\n';
    }
}

std::vector<RootedGraph> read_graph_lines(std::istream &in) {
    std::vector<RootedGraph> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            out.push_back(parse_graph(line));
        } catch (const std::invalid_argument &e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

} // namespace bslimits
