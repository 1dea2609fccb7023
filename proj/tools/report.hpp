#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace bslimits::cli {

inline constexpr const char *kVersion = "0.1.0";

// Git-style blob hash: SHA-1 of "blob <size>\0" followed by the content.
std::string blob_hash(const std::string &content);

struct Report {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    // Extra input content (class or graph files) folded into the hash.
    std::string inputs;
    nlohmann::json results = nlohmann::json::object();
    // Rows for the CSV view; each row an object with scalar values.
    std::vector<nlohmann::json> rows;

    nlohmann::json to_json() const;
    void write_json(std::ostream &out) const;
    void write_csv(std::ostream &out) const;
};

} // namespace bslimits::cli
