// Config-driven front end for the coupled KdV-MKdV laboratory. All behaviour
// flows through the config file; a few common fields can be overridden from
// the command line.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ckm/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"coupled KdV-MKdV laboratory: explicit-scheme simulation, "
                 "closed-form solution sampling and verification harnesses"};
    app.set_help_flag("--help", "print usage");
    std::string config_path;
    double h_override = 0.0, tau_override = 0.0, t_end_override = -1.0;
    std::string outdir_override;
    app.add_option("-c,--config", config_path, "run configuration file")->required();
    app.add_option("--h", h_override, "override grid spacing");
    app.add_option("--tau", tau_override, "override time step (fixed)");
    app.add_option("--t-end", t_end_override, "override end time");
    app.add_option("--output-dir", outdir_override, "override output directory");
    CLI11_PARSE(app, argc, argv);

    std::ifstream is(config_path);
    if (!is) {
        std::cerr << "validation error: cannot open config " << config_path << "\n";
        return 2;
    }
    std::ostringstream buf;
    buf << is.rdbuf();

    try {
        ckm::RunConfig cfg = ckm::parse_config(buf.str());
        if (h_override > 0.0) cfg.h = h_override;
        if (tau_override > 0.0) {
            cfg.stepper.auto_tau = false;
            cfg.stepper.tau = tau_override;
        }
        if (t_end_override >= 0.0) cfg.t_end = t_end_override;
        if (!outdir_override.empty()) cfg.output.directory = outdir_override;
        return ckm::run(cfg, std::cout);
    } catch (const ckm::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ckm::error& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
