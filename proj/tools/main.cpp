#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bslimits/family.hpp"
#include "bslimits/limits.hpp"
#include "bslimits/metric.hpp"
#include "bslimits/solve.hpp"
#include "commands.hpp"

using namespace bslimits;
using namespace bslimits::cli;

namespace {

void add_class_flags(CLI::App *cmd, ClassOptions &o) {
    cmd->add_option("class,--class", o.name, "Builtin class name");
    cmd->add_option("--class-file", o.file, "Custom class JSON");
    cmd->add_option("--order", o.order, "Truncation order (0: class default)")->check(CLI::NonNegativeNumber);
}

int emit(const Report &r, const std::string &out, const std::string &format) {
    std::ofstream file;
    std::ostream *os = &std::cout;
    if (!out.empty()) {
        file.open(out);
        if (!file) {
            std::cerr << "error: cannot write " << out << '\n';
            return 2;
        }
        os = &file;
    }
    if (format == "csv") {
        r.write_csv(*os);
    } else {
        r.write_json(*os);
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Local limits of random graphs from subcritical classes, and the RCIS pseudometric"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out;
    std::string format = "json";
    app.add_option("--out", out, "Write the report here instead of stdout");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));

    ConstantsOptions constants;
    auto *c_const = app.add_subcommand("constants", "Singularity data and leaf probabilities");
    add_class_flags(c_const, constants.cls);

    LinksOptions links;
    auto *c_links = app.add_subcommand("links", "List links with their probabilities");
    add_class_flags(c_links, links.cls);
    c_links->add_option("--max-size", links.max_size, "Largest link size");

    VerifyChainOptions verify;
    std::uint64_t verify_seed = 0;
    auto *c_verify = app.add_subcommand("verify-chain", "Chain probability against enumeration or sampling");
    add_class_flags(c_verify, verify.cls);
    c_verify->add_option("--chain", verify.chain, "Comma-separated links: leaf or L<i> (see `links`)");
    c_verify->add_option("--n", verify.n_range, "N or LO..HI");
    c_verify->add_option("--samples", verify.samples, "Samples per n beyond exhaustive range");
    auto *verify_seed_opt = c_verify->add_option("--seed", verify_seed, "Sampling seed");
    c_verify->add_option("--exhaustive-max", verify.exhaustive_max, "Largest n enumerated exhaustively");

    SampleChainOptions sample;
    std::uint64_t sample_seed = 0;
    auto *c_sample = app.add_subcommand("sample-chain", "Chains from the limit link measure");
    add_class_flags(c_sample, sample.cls);
    c_sample->add_option("--k", sample.k, "Links per chain");
    c_sample->add_option("--samples", sample.samples, "Number of chains");
    auto *sample_seed_opt = c_sample->add_option("--seed", sample_seed, "Sampling seed");
    c_sample->add_option("--epsilon", sample.epsilon, "Link-measure mass allowed beyond the size cutoff");

    MetricOptions metric;
    auto *c_metric = app.add_subcommand("metric", "Radius of similarity between two graph families");
    c_metric->add_option("a", metric.a, "First family")->required();
    c_metric->add_option("b", metric.b, "Second family")->required();
    c_metric->add_option("--rmax", metric.rmax, "Largest RCIS size compared");

    CoreOptions core_opts;
    auto *c_core = app.add_subcommand("core", "Ground floor, first floor and core of a marked graph");
    c_core->add_option("graph", core_opts.graph_file, "JSON file: {\"graph\": ..., \"marked\": [...]}")
        ->required();

    CensusOptions census;
    auto *c_census = app.add_subcommand("census", "Partition a graph corpus by RCIS profiles");
    c_census->add_option("input", census.input, "JSON-lines corpus")->required();
    c_census->add_option("--k", census.k, "Largest RCIS size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Report r;
        if (*c_const) {
            r = cmd_constants(constants);
        } else if (*c_links) {
            r = cmd_links(links);
        } else if (*c_verify) {
            if (*verify_seed_opt) {
                verify.seed = verify_seed;
            }
            r = cmd_verify_chain(verify);
        } else if (*c_sample) {
            if (*sample_seed_opt) {
                sample.seed = sample_seed;
            }
            r = cmd_sample_chain(sample);
        } else if (*c_metric) {
            r = cmd_metric(metric);
        } else if (*c_core) {
            r = cmd_core(core_opts);
        } else {
            r = cmd_census(census);
        }
        return emit(r, out, format);
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const UndefinedGroundFloor &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    }
}
