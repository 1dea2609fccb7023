#pragma once

// Graph JSON: {"n": 4, "root": 0, "edges": [[0, 1], [1, 2], [1, 3]]}.
// Corpora are JSON-lines, one graph object per line.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bslimits/graph.hpp"

namespace bslimits {

nlohmann::json graph_to_json(const RootedGraph &g);
// Throws std::invalid_argument with a description of the offending field.
RootedGraph graph_from_json(const nlohmann::json &j);

std::string format_graph(const RootedGraph &g);
RootedGraph parse_graph(std::string_view text);

void write_graph_lines(std::ostream &out, const std::vector<RootedGraph> &graphs);
// Blank lines are skipped; errors report the 1-based line number.
std::vector<RootedGraph> read_graph_lines(std::istream &in);

} // namespace bslimits
