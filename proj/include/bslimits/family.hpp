#pragma once

// Rooted graph families described by a small term language. Finite graphs
// and a handful of infinite ones (ray, infinite star and fan, joins of all
// paths or fans, the Rado graph) whose RCIS profiles follow closed rules.
//
// Grammar (whitespace-insensitive):
//   family := "path" "(" INT ")"          path with INT edges, rooted at an end
//           | "ray"                       one-way infinite path, rooted at its end
//           | "star" "(" INT | "inf" ")"  rooted at the centre
//           | "fan" "(" INT | "inf" ")"   apex joined to a path on INT vertices
//           | "cycle" "(" INT ")" | "complete" "(" INT ")"
//           | "graph" "(" INT ";" [edge {"," edge}] ")"   edge := INT "-" INT, root 0
//           | "join" "(" family {"," family} ")"
//           | "joinall" "(" ("paths" | "fans") ")"
//           | "rado"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bslimits/graph.hpp"

namespace bslimits {

struct GraphFamily {
    enum class Kind { finite, path, ray, star, star_inf, fan, fan_inf, join, join_all_paths, join_all_fans, rado };

    Kind kind = Kind::finite;
    int n = 0;               // path edges, star leaves, fan path vertices
    RootedGraph graph;       // finite
    std::vector<GraphFamily> parts; // join

    static GraphFamily finite(RootedGraph g);
    static GraphFamily path(int edges);
    static GraphFamily ray();
    static GraphFamily star(int leaves);
    static GraphFamily star_inf();
    static GraphFamily fan(int path_vertices);
    static GraphFamily fan_inf();
    static GraphFamily join(std::vector<GraphFamily> parts);
    static GraphFamily join_all_paths();
    static GraphFamily join_all_fans();
    static GraphFamily rado();

    bool is_finite() const;
    // The graph itself for finite families (path, star, fan, finite joins).
    RootedGraph materialise() const;

    // Canonical text in the grammar above; parse(to_string()) round-trips.
    std::string to_string() const;
};

struct FamilyParseError : std::invalid_argument {
    FamilyParseError(const std::string &what, std::size_t position);
    std::size_t position; // 0-based offset into the input
};

GraphFamily parse_family(std::string_view text);

} // namespace bslimits
