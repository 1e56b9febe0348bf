#include "emsched/error.hpp"
#include "emsched/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

// Exit codes: 0 success, 1 usage or config error, 2 input data error,
// 3 verification failure.
constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kInputError = 2;
constexpr int kVerifyFailure = 3;

struct CommonOptions {
    std::string config_path;
    std::string trace_path;
    std::string out_path;
    std::string format;
    std::string algorithm;
    std::optional<std::uint64_t> first_jobs;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> instances;
};

emsched::ExperimentConfig effective_config(const CommonOptions& opts) {
    emsched::ExperimentConfig config;
    if (!opts.config_path.empty()) {
        config = emsched::load_config(opts.config_path);
    }
    if (!opts.trace_path.empty()) {
        config.trace_path = opts.trace_path;
        config.vms_path.clear();
        config.synthetic.reset();
    }
    if (opts.first_jobs) config.first_jobs = *opts.first_jobs;
    if (opts.seed) {
        config.seed = *opts.seed;
        if (config.synthetic) config.synthetic->seed = *opts.seed;
    }
    if (opts.instances) config.verify_instances = *opts.instances;
    if (!opts.format.empty()) {
        if (opts.format == "csv") {
            config.format = emsched::ReportFormat::kCsv;
        } else if (opts.format == "json") {
            config.format = emsched::ReportFormat::kJson;
        } else if (opts.format == "table") {
            config.format = emsched::ReportFormat::kTable;
        } else {
            throw emsched::Error(emsched::Errc::ConfigParseError,
                                 "--format expects csv, json or table, got \"" +
                                     opts.format + "\"");
        }
    }
    if (!opts.algorithm.empty()) {
        emsched::parse_algorithm(opts.algorithm, config);
        config.algorithms = {opts.algorithm};
        config.baseline = opts.algorithm;
    }
    return config;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw emsched::Error(emsched::Errc::InputDataError,
                             "cannot write \"" + out_path + "\"");
    }
    out << text;
}

int do_convert(const CommonOptions& opts) {
    std::optional<std::size_t> first;
    if (opts.first_jobs) first = static_cast<std::size_t>(*opts.first_jobs);
    emsched::ConversionResult result =
        emsched::convert_trace(opts.trace_path, opts.out_path, first);
    std::cout << "wrote " << result.vms.size() << " vm requests to "
              << opts.out_path;
    if (result.dropped_jobs > 0) {
        std::cout << " (" << result.dropped_jobs << " jobs dropped)";
    }
    std::cout << "\n";
    return kOk;
}

int do_report(const CommonOptions& opts) {
    emsched::ExperimentConfig config = effective_config(opts);
    emsched::RunReport report = emsched::run_experiment(config);
    emit(emsched::format_report(report, config.format), opts.out_path);
    return kOk;
}

int do_verify(const CommonOptions& opts) {
    emsched::ExperimentConfig config = effective_config(opts);
    emsched::IdentityReport report = emsched::verify_identities(config);
    emit(report.summary(), opts.out_path);
    return report.pass() ? kOk : kVerifyFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-aware fixed-interval vm placement experiments"};
    app.require_subcommand(1);
    CommonOptions opts;

    CLI::App* convert = app.add_subcommand(
        "convert", "Convert an SWF trace into the vm request CSV");
    convert->add_option("--trace", opts.trace_path, "SWF trace file")->required();
    convert->add_option("--out", opts.out_path, "output CSV path")->required();
    convert->add_option("--first-jobs", opts.first_jobs,
                        "keep only the first N jobs");

    auto add_report_options = [&opts](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "experiment config file");
        cmd->add_option("--trace", opts.trace_path,
                        "SWF trace (overrides the config workload)");
        cmd->add_option("--first-jobs", opts.first_jobs,
                        "keep only the first N jobs");
        cmd->add_option("--seed", opts.seed, "random seed override");
        cmd->add_option("--format", opts.format, "csv, json or table");
        cmd->add_option("--out", opts.out_path, "write the report here");
    };

    CLI::App* run = app.add_subcommand(
        "run", "Run the configured placement algorithms and report");
    add_report_options(run);
    run->add_option("--algo", opts.algorithm,
                    "run a single algorithm (it becomes its own baseline)");

    CLI::App* compare = app.add_subcommand(
        "compare", "Run all configured algorithms and emit the comparison");
    add_report_options(compare);

    CLI::App* verify = app.add_subcommand(
        "verify", "Check the energy model identities on random instances");
    verify->add_option("--config", opts.config_path, "experiment config file");
    verify->add_option("--seed", opts.seed, "random seed override");
    verify->add_option("--instances", opts.instances,
                       "number of random instances");
    verify->add_option("--out", opts.out_path, "write the summary here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (convert->parsed()) return do_convert(opts);
        if (run->parsed() || compare->parsed()) return do_report(opts);
        if (verify->parsed()) return do_verify(opts);
        return kUsageError;
    } catch (const emsched::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case emsched::Errc::ConfigParseError:
        case emsched::Errc::UnknownAlgorithm:
            return kUsageError;
        default:
            return kInputError;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
}
