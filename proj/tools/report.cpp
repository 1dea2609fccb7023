#include "report.hpp"

#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

namespace bslimits::cli {

std::string blob_hash(const std::string &content) {
    const std::string header = "blob " + std::to_string(content.size()) + '\0';
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX *ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr);
    EVP_DigestUpdate(ctx, header.data(), header.size());
    EVP_DigestUpdate(ctx, content.data(), content.size());
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return hex.str();
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = config;
    j["input_hash"] = blob_hash(config.dump() + inputs);
    j["versions"] = {{"bslimits", kVersion}};
    j["results"] = results;
    return j;
}

void Report::write_json(std::ostream &out) const { out << to_json().dump(2) << '\n'; }

namespace {

std::string csv_cell(const nlohmann::json &v) {
    std::string s;
    if (v.is_string()) {
        s = v.get<std::string>();
    } else if (v.is_null()) {
        return "";
    } else {
        s = v.dump();
    }
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return q + "\"";
}

} // namespace

void Report::write_csv(std::ostream &out) const {
    // Columns in order of first appearance.
    std::vector<std::string> cols;
    std::set<std::string> seen;
    for (const auto &row : rows) {
        for (auto it = row.begin(); it != row.end(); ++it) {
            if (seen.insert(it.key()).second) {
                cols.push_back(it.key());
            }
        }
    }
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << cols[i];
    }
    out << '\n';
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            out << (i ? "," : "") << (row.contains(cols[i]) ? csv_cell(row[cols[i]]) : "");
        }
        out << '\n';
    }
}

} // namespace bslimits::cli
