#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "floqlab/commands.hpp"
#include "floqlab/errors.hpp"

namespace {

struct CliArgs {
    std::string config_path;
    std::string out_path;
    int workers = 1;
    long seed = 0;
    bool strict = false;
};

void add_common_options(CLI::App* cmd, CliArgs& args) {
    cmd->add_option("--config", args.config_path, "run configuration file (JSON)")
        ->required();
    cmd->add_option("--out", args.out_path, "output file (default: stdout)");
    cmd->add_option("--workers", args.workers, "concurrent sweep evaluations (default 1)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", args.seed,
                    "accepted for interface stability; every computation is deterministic");
    cmd->add_flag("--strict", args.strict,
                  "treat symmetry-rule inapplicability as an error (exit code 4)");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw floqlab::ConfigError("cannot open output file '" + out_path + "'");
    out << text;
    out.close();
    if (out.fail())
        throw floqlab::ConfigError("failed writing output file '" + out_path + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Floquet spectroscopy of periodically driven few-level systems"};
    app.require_subcommand(1);

    CliArgs args;
    CLI::App* quasienergies =
        app.add_subcommand("quasienergies", "sweep quasienergies over drive amplitude (CSV)");
    CLI::App* susceptibility =
        app.add_subcommand("susceptibility", "sweep the probe susceptibility (CSV)");
    CLI::App* dipoles =
        app.add_subcommand("dipoles", "emit dynamical dipole elements along the sweep (CSV)");
    CLI::App* symmetry_report =
        app.add_subcommand("symmetry-report", "analyze declared symmetries at one drive point (JSON)");
    CLI::App* dark_scan =
        app.add_subcommand("dark-scan", "emit element magnitude ratios for locating dark states (CSV)");
    for (CLI::App* cmd : {quasienergies, susceptibility, dipoles, symmetry_report, dark_scan})
        add_common_options(cmd, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const floqlab::RunConfig cfg = floqlab::load_run_config_file(args.config_path);
        const floqlab::CommandOptions opt{args.workers, args.strict};
        std::string result;
        if (quasienergies->parsed())
            result = floqlab::cmd_quasienergies(cfg, opt);
        else if (susceptibility->parsed())
            result = floqlab::cmd_susceptibility(cfg, opt);
        else if (dipoles->parsed())
            result = floqlab::cmd_dipoles(cfg, opt);
        else if (symmetry_report->parsed())
            result = floqlab::cmd_symmetry_report(cfg, opt);
        else
            result = floqlab::cmd_dark_scan(cfg, opt);
        emit(result, args.out_path);
        return 0;
    } catch (const floqlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const floqlab::InapplicabilityError& e) {
        std::cerr << "inapplicable: " << e.what() << '\n';
        return 4;
    } catch (const floqlab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
