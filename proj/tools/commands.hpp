#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "report.hpp"

namespace bslimits::cli {

// Bad flags, files or values; exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ClassOptions {
    std::string name;
    std::string file;
    std::size_t order = 0;
};

struct ConstantsOptions {
    ClassOptions cls;
};

struct LinksOptions {
    ClassOptions cls;
    int max_size = 4;
};

struct VerifyChainOptions {
    ClassOptions cls;
    std::string chain;       // "leaf,L3", "" for the empty chain
    std::string n_range = "4..8";
    std::uint64_t samples = 0;
    std::optional<std::uint64_t> seed;
    int exhaustive_max = 0;  // 0: per-class default
};

struct SampleChainOptions {
    ClassOptions cls;
    int k = 3;
    std::uint64_t samples = 1;
    std::optional<std::uint64_t> seed;
    double epsilon = 1e-3;
};

struct MetricOptions {
    std::string a;
    std::string b;
    int rmax = 8;
};

struct CoreOptions {
    std::string graph_file;
};

struct CensusOptions {
    std::string input;  // JSON-lines corpus
    int k = 3;
};

Report cmd_constants(const ConstantsOptions &o);
Report cmd_links(const LinksOptions &o);
Report cmd_verify_chain(const VerifyChainOptions &o);
Report cmd_sample_chain(const SampleChainOptions &o);
Report cmd_metric(const MetricOptions &o);
Report cmd_core(const CoreOptions &o);
Report cmd_census(const CensusOptions &o);

} // namespace bslimits::cli
