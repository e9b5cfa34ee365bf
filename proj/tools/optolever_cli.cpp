#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "optolever/cli.hpp"

int main(int argc, char** argv)
{
    using namespace optolever;

    CLI::App app{"Quantum noise budgets for optical-lever readout of mirror rotation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    cli::RunOptions opts;
    std::string target;
    double freq_hz = 0.0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Run configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "Output CSV path (default: standard output)");
    };

    CLI::App* budget = app.add_subcommand("budget", "Noise spectrum on the configured frequency grid");
    CLI::App* sweep = app.add_subcommand("sweep", "Noise versus Gouy separation / detector position at one frequency");
    CLI::App* solve = app.add_subcommand("solve", "Backaction cancellation and optimal readout");
    CLI::App* validate = app.add_subcommand("validate", "Monte Carlo check of the analytic spectrum");
    CLI::App* modes = app.add_subcommand("modes", "Hermite-Gaussian overlap matrix");
    for (CLI::App* sub : {budget, sweep, solve, validate, modes})
        add_common(sub);

    sweep->add_option("--freq-hz", freq_hz, "Sideband frequency (Hz)")->required();
    solve->add_option("--target", target, "position | frequency | psi")
        ->required()
        ->check(CLI::IsMember({"position", "frequency", "psi"}));
    solve->add_option("--freq-hz", freq_hz, "Sideband frequency (Hz) for position and psi targets");
    validate->add_option("--seed", opts.seed, "RNG seed");
    validate->add_option("--samples", opts.samples, "Samples per frequency")->check(CLI::Range(1000, 100000000));
    modes->add_option("--max-order", opts.max_order, "Largest l+m included")->check(CLI::Range(0, kMaxModeOrder));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version exit 0; every other parse error is a usage error.
        return app.exit(e) == 0 ? cli::kExitOk : cli::kExitUsage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    const auto sub = cli::parse_subcommand(chosen->get_name());
    if (!target.empty())
        opts.target = target;
    if (const CLI::Option* o = chosen->get_option_no_throw("--freq-hz"); o && o->count() > 0)
        opts.freq_hz = freq_hz;

    std::optional<RunConfig> cfg;
    try {
        std::ifstream in(config_path);
        std::ostringstream text;
        text << in.rdbuf();
        cfg = parse_config(text.str(), config_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitUsage;
    }

    if (out_path.empty())
        return cli::run(*sub, *cfg, opts, {std::cout, std::cout, std::cerr});

    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open " << out_path << " for writing\n";
        return cli::kExitUsage;
    }
    return cli::run(*sub, *cfg, opts, {out, std::cout, std::cerr});
}
