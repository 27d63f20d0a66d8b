#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qmetric/errors.hpp"

namespace {

void add_common_options(CLI::App* cmd, qmetric::cli::CliOptions& opts, bool config_required) {
    auto* config = cmd->add_option("--config", opts.config_path, "JSON job configuration");
    if (config_required) config->required();
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&opts](std::uint64_t v) { opts.seed = v; }, "Override the config seed");
    cmd->add_option_function<int>(
        "--trials", [&opts](int v) { opts.trials = v; }, "Override the config trial count");
    cmd->add_option("--out", opts.out_path, "Report output path (default: stdout)");
    cmd->add_option("--format", opts.format, "Report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option_function<double>(
        "--tol", [&opts](double v) { opts.tol = v; }, "Override the PSD tolerance band");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fisher-information and divergence tradeoff certifier"};
    app.require_subcommand(1);

    qmetric::cli::CliOptions opts;
    int (*handler)(const qmetric::cli::CliOptions&) = nullptr;

    auto* validate = app.add_subcommand("validate", "Check config invariants and print residuals");
    add_common_options(validate, opts, true);
    validate->callback([&handler] { handler = qmetric::cli::cmd_validate; });

    auto* tradeoff = app.add_subcommand("tradeoff", "Certify the information-disturbance inequality");
    add_common_options(tradeoff, opts, true);
    tradeoff->callback([&handler] { handler = qmetric::cli::cmd_tradeoff; });

    auto* scan = app.add_subcommand("scan", "Sweep one scalar and emit a CSV trace");
    add_common_options(scan, opts, true);
    scan->callback([&handler] { handler = qmetric::cli::cmd_scan; });

    auto* divergence = app.add_subcommand("divergence", "Relative-entropy tradeoffs and expansions");
    add_common_options(divergence, opts, true);
    divergence->callback([&handler] { handler = qmetric::cli::cmd_divergence; });

    auto* randsuite = app.add_subcommand("randsuite", "Run the full randomized certification suite");
    add_common_options(randsuite, opts, false);
    randsuite
        ->add_flag("--self-test-negate", opts.self_test_negate,
                   "Negate every verdict (harness self-test)")
        ->group("");  // hidden
    randsuite->callback([&handler] { handler = qmetric::cli::cmd_randsuite; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return handler(opts);
    } catch (const qmetric::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qmetric::UnknownMetric& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qmetric::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
