// corrwitness: command-line runner for the dephasing-qubit correlation witness

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "corrwitness/cli.hpp"
#include "corrwitness/correlations.hpp"

namespace cli = corrwitness::cli;

namespace {

struct SourceOptions {
    std::string preset;
    std::string config;
    std::string out;
    std::optional<double> tol;
    std::optional<std::size_t> grid;
    bool no_plots{false};
};

void add_source_options(CLI::App* cmd, SourceOptions& o) {
    auto* p = cmd->add_option("--preset", o.preset, "Built-in scenario (fig1, fig2, fig3, fig4a, fig4b, fig4c, fig4)");
    auto* c = cmd->add_option("--config", o.config, "JSON configuration or a manifest.json from a previous run");
    p->excludes(c);
    cmd->add_option("--out", o.out, "Output directory (default out/<scenario>)");
    cmd->add_option("--tol", o.tol, "Relative quadrature tolerance");
    cmd->add_option("--grid", o.grid, "Number of time-grid points");
    cmd->add_flag("--no-plots", o.no_plots, "Skip SVG output");
}

cli::RunConfig resolve(const SourceOptions& o) {
    if (o.preset.empty() && o.config.empty())
        throw corrwitness::ConfigError("one of --preset or --config is required");
    auto c = o.preset.empty() ? cli::load_config(o.config) : cli::preset(o.preset);
    if (o.tol)
        c.quadrature.rel_tol = *o.tol;
    if (o.grid)
        c.model.n_steps = *o.grid;
    if (o.no_plots)
        c.plots = false;
    c.validate();
    return c;
}

std::filesystem::path out_dir(const SourceOptions& o, const cli::RunConfig& c) {
    return o.out.empty() ? std::filesystem::path("out") / c.scenario : std::filesystem::path(o.out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Initial-correlation witness for a dephasing two-level system"};
    app.set_version_flag("--version", cli::kToolVersion);
    app.require_subcommand(0, 1);

    std::string dump;
    app.add_option("--dump-preset", dump, "Print the configuration of a preset and exit");

    SourceOptions run_opts, sweep_opts;
    std::size_t jobs = 1;
    auto* run = app.add_subcommand("run", "Run one scenario (single temperature, one or more couplings)");
    add_source_options(run, run_opts);
    auto* sweep = app.add_subcommand("sweep", "Run every (temperature, coupling) pair of a scenario");
    add_source_options(sweep, sweep_opts);
    sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    bool quick = false;
    std::string fault, verify_out = "verify_report.json";
    auto* verify = app.add_subcommand("verify", "Oracle equivalence and quadrature cross-checks");
    verify->add_flag("--quick", quick, "Single-mode oracle only");
    verify->add_option("--inject-fault", fault, "Deliberately corrupt the analytic path (psi2-phase-sign)");
    verify->add_option("--out", verify_out, "Report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitConfig;
    }

    try {
        if (!dump.empty()) {
            std::cout << cli::config_to_json(cli::preset(dump)) << '\n';
            return cli::kExitOk;
        }
        if (*run) {
            const auto c = resolve(run_opts);
            const auto dir = out_dir(run_opts, c);
            const auto s = cli::run_scenario(c, dir);
            for (const auto& p : s.points)
                std::printf("k_BT=%s s=%s peak D=%s at t=%s\n", cli::format_number(p.temperature).c_str(),
                            cli::format_number(p.s).c_str(), cli::format_number(p.peak.value).c_str(),
                            cli::format_number(p.peak.time).c_str());
            std::printf("wrote %s (%.2f s)\n", dir.string().c_str(), s.seconds);
            return cli::kExitOk;
        }
        if (*sweep) {
            const auto c = resolve(sweep_opts);
            const auto dir = out_dir(sweep_opts, c);
            const auto s = cli::run_sweep(c, dir, jobs);
            std::printf("wrote %zu points to %s (%.2f s)\n", s.points.size(), dir.string().c_str(), s.seconds);
            return cli::kExitOk;
        }
        if (*verify) {
            cli::VerifyOptions vo{quick, cli::parse_fault(fault)};
            const auto checks = cli::run_verify(vo);
            cli::write_verify_report(verify_out, checks, vo);
            bool ok = true;
            for (const auto& c : checks) {
                std::printf("%-30s %s  achieved %.3g (limit %.3g, %.2f s)\n", c.name.c_str(),
                            c.passed ? "PASS" : "FAIL", c.achieved, c.threshold, c.seconds);
                ok = ok && c.passed;
            }
            return ok ? cli::kExitOk : cli::kExitVerify;
        }
        std::cout << app.help();
        return cli::kExitConfig;
    } catch (const corrwitness::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cli::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return cli::kExitNumerical;
    }
}
