// homsim: two-photon scattering on a waveguide-coupled two-level system.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "homqed/cli.hpp"
#include "homqed/quadrature.hpp"

namespace {

using namespace homqed::cli;

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw UsageError("cannot open output file '" + path.string() + "'");
    os << text;
}

// CSV reports with several tables go to one file per table: the first at the
// requested path, the rest with the table name appended to the stem.
void emit(const Report& report, const Settings& s) {
    if (s.output.empty()) {
        std::cout << render(report, s.format);
        return;
    }
    const std::filesystem::path path(s.output);
    if (s.format == Format::json || report.tables.size() == 1) {
        write_file(path, render(report, s.format));
        return;
    }
    for (std::size_t i = 0; i < report.tables.size(); ++i) {
        Report one;
        one.tables.push_back(report.tables[i]);
        std::filesystem::path p = path;
        if (i > 0)
            p.replace_filename(path.stem().string() + "_" + report.tables[i].name +
                               path.extension().string());
        write_file(p, render(one, s.format));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon scattering on a two-level emitter in a waveguide"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key = value file mirroring the long flags", false);

    Settings s;
    std::string format = "csv";
    double gamma = 0.0;
    double delay = 0.0;
    double center = 0.0;
    app.add_option("--geometry", s.geometry, "hom, reflector or link")
        ->check(CLI::IsMember({"hom", "reflector", "link"}))
        ->capture_default_str();
    auto* gamma_opt = app.add_option("--gamma", gamma, "Linewidth over packet width (default 10)");
    auto* delay_opt = app.add_option("--delay", delay, "Dimensionless delay (default 0)");
    auto* center_opt =
        app.add_option("--center", center, "Packet centre detuning (default Γ for hom, else 0)");
    app.add_option("--range", s.range, "Sweep range start:stop");
    app.add_option("--steps", s.steps, "Number of sweep points");
    app.add_flag("--log", s.log, "Logarithmic sweep spacing");
    app.add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--tol", s.tol, "Relative tolerance of the adaptive quadrature")
        ->capture_default_str();
    app.add_option("--output", s.output, "Write to PATH instead of stdout");
    app.add_option("--variable", s.variable, "sweep: gamma, delay or center")
        ->check(CLI::IsMember({"gamma", "delay", "center"}))
        ->capture_default_str();
    app.add_option("--outputs", s.outputs, "sweep: p_hom, p_res, p0, delta_p, table, analytic")
        ->delimiter(',');
    app.add_option("--inset-range", s.inset_range, "fig-blockade: inset Γ range")
        ->capture_default_str();
    app.add_option("--inset-steps", s.inset_steps, "fig-blockade: inset points")
        ->capture_default_str();
    bool no_oracle = false;
    app.add_flag("--no-oracle", no_oracle, "point: skip the grid oracle");

    auto sub = [&](const char* name, const char* help) {
        auto* c = app.add_subcommand(name, help);
        c->fallthrough();
        return c;
    };
    auto* point = sub("point", "Exact, analytic and oracle values at one parameter point");
    auto* fig_hom = sub("fig-hom", "HOM antibunching against Γ, exact and asymptotic");
    auto* fig_blockade = sub("fig-blockade", "Resonance correction against Δ plus the Γ inset");
    auto* sweep = sub("sweep", "Sweep one parameter");
    auto* audit = sub("audit", "Oracle comparison, factor audit and unitarity scan");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_code::usage;
    }

    if (gamma_opt->count()) s.gamma = gamma;
    if (delay_opt->count()) s.delay = delay;
    if (center_opt->count()) s.center = center;
    s.format = format == "json" ? Format::json : Format::csv;
    s.oracle = !no_oracle;

    try {
        Report report;
        if (point->parsed()) {
            report = cmd_point(s);
        } else if (fig_hom->parsed()) {
            report = cmd_fig_hom(s);
        } else if (fig_blockade->parsed()) {
            report = cmd_fig_blockade(s);
        } else if (sweep->parsed()) {
            report = cmd_sweep(s);
        } else if (audit->parsed()) {
            report = cmd_audit(s);
        }
        emit(report, s);
        return report.pass ? exit_code::ok : exit_code::audit;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return exit_code::numeric;
    }
}
