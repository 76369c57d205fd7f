#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "epigame/config.hpp"
#include "epigame/run.hpp"

namespace {

void print_report(const epigame::ConfigReport& report, std::ostream& out)
{
    for (const std::string& v : report.violations)
        out << "violation: " << v << "\n";
    for (const std::string& w : report.warnings)
        out << "warning: " << w << "\n";
    for (const std::string& d : report.defaulted)
        out << "defaulted: " << d << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Nash-equilibrium social distancing with known or uncertain vaccination timing"};
    app.require_subcommand(1);

    std::string config_path;
    epigame::CliOptions options;

    CLI::App* run = app.add_subcommand("run", "solve the scenario(s) and write CSV/JSON outputs");
    run->add_option("config", config_path, "config file (JSON)")->required();
    run->add_option("--outdir", options.outdir, "output directory (overrides config and "
                                                "EPIGAME_OUTDIR)");
    run->add_option("--jobs", options.jobs, "concurrent sweep points")->check(CLI::Range(1, 256));
    run->add_flag("--svg", options.svg, "also render figure.svg");

    CLI::App* validate = app.add_subcommand("validate", "check a config without solving");
    validate->add_option("config", config_path, "config file (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const epigame::ConfigReport report = epigame::load_config(config_path);
        print_report(report, std::cout);
        if (validate->parsed()) {
            std::cout << (report.ok() ? "config ok" : "config invalid") << "\n";
            return report.ok() ? 0 : 1;
        }
        if (!report.ok())
            return 1;
        return epigame::run_scenarios(*report.config, report, options, std::cout);
    } catch (const epigame::ConfigParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
