#include "ckm/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "ckm/csv.hpp"
#include "ckm/darboux.hpp"
#include "ckm/harness.hpp"
#include "ckm/svg.hpp"

namespace fs = std::filesystem;

namespace ckm {

namespace {

std::vector<double> grid_coords(const Grid& g) {
    std::vector<double> x(static_cast<std::size_t>(g.point_count));
    for (int i = 0; i < g.point_count; ++i) x[static_cast<std::size_t>(i)] = g.node(i);
    return x;
}

std::vector<PlotSeries> state_series(const FieldState& s) {
    std::vector<PlotSeries> out;
    for (int n = 0; n < s.n_components(); ++n)
        out.push_back({"theta" + std::to_string(n + 1), s.values[static_cast<std::size_t>(n)]});
    return out;
}

std::string time_tag(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%012.6f", t);
    return buf;
}

struct LoadedInitial {
    Grid grid;
    FieldState state;
};

LoadedInitial load_initial(const RunConfig& cfg) {
    if (cfg.initial.family == "csv") {
        auto [grid, state] = read_snapshot_csv(cfg.initial.csv_path);
        return {grid, std::move(state)};
    }
    const Grid grid = build_grid(cfg.x_min, cfg.x_max, cfg.h);
    return {grid, sample_on_grid(cfg.initial.solution, grid, 0.0)};
}

void run_simulate(const RunConfig& cfg, const fs::path& dir, std::ostream& log) {
    auto [grid, initial] = load_initial(cfg);
    const CoefficientSet coeffs = cfg.system_coefficients();
    std::vector<double> snaps = cfg.snapshots;
    if (snaps.empty()) snaps = {cfg.t_end};

    const IntegrationResult result = integrate(initial, coeffs, grid, cfg.t_end, cfg.stepper, snaps);
    for (const auto& w : result.diagnostics.warnings) log << "warning: " << w << "\n";
    log << "tau = " << result.diagnostics.tau_used << ", steps = " << result.diagnostics.steps_taken
        << ", max |theta| = " << result.diagnostics.running_max_abs << "\n";

    const auto xs = grid_coords(grid);
    for (std::size_t s = 0; s < result.snapshots.size(); ++s) {
        const FieldState& state = result.snapshots[s];
        if (cfg.output.csv)
            write_snapshot_csv((dir / snapshot_filename(state.t)).string(), grid, state);
        if (cfg.output.svg)
            write_line_plot_svg((dir / ("profile_t" + time_tag(state.t) + ".svg")).string(), xs,
                                state_series(state));
        log << "t = " << state.t << ": mass =";
        for (double m : result.diagnostics.mass[s]) log << " " << m;
        log << ", l2 = " << result.diagnostics.l2_norm[s] << "\n";
    }
    if (cfg.output.long_format)
        write_long_format_csv((dir / "long_snapshots.csv").string(), grid, result.snapshots);

    if (cfg.output.errors) {
        if (cfg.initial.family == "csv" || cfg.initial.solution.kind == FamilyKind::zero)
            throw validation_error("percentage-error output needs a closed-form initial family");
        for (const auto& state : result.snapshots) {
            const FieldState exact = sample_on_grid(cfg.initial.solution, grid, state.t);
            const auto pct = percentage_error(state, exact);
            write_percentage_csv((dir / ("errors_t" + time_tag(state.t) + ".csv")).string(), grid, pct);
            log << "t = " << state.t << ": max percentage error = "
                << percentage_error_max(state, exact) << "%\n";
            if (cfg.output.svg) {
                std::vector<PlotSeries> ps;
                for (std::size_t n = 0; n < pct.size(); ++n)
                    ps.push_back({"pct" + std::to_string(n + 1), pct[n]});
                write_line_plot_svg((dir / ("errors_t" + time_tag(state.t) + ".svg")).string(), xs, ps);
            }
        }
    }
}

void run_analytic(const RunConfig& cfg, const fs::path& dir, std::ostream& log) {
    if (cfg.initial.family == "csv")
        throw validation_error("analytic needs a closed-form family, not csv input");
    const Grid grid = build_grid(cfg.x_min, cfg.x_max, cfg.h);
    const auto xs = grid_coords(grid);
    std::vector<double> times = cfg.snapshots;
    if (times.empty()) times = {0.0};

    const auto& fam = cfg.initial.solution;
    const bool singular_family = fam.kind == FamilyKind::r_family && fam.params.r
                                 && std::fabs(*fam.params.r) >= 1.0;
    for (double t : times) {
        const FieldState state = sample_on_grid(fam, grid, t);
        if (cfg.output.csv)
            write_snapshot_csv((dir / snapshot_filename(t)).string(), grid, state);
        std::vector<double> markers;
        if (singular_family) {
            const auto poles = singular_points(fam.params.a.real(), *fam.params.r,
                                               {cfg.x_min, cfg.x_max, t, t}, cfg.sing_resolution);
            for (const auto& p : poles) markers.push_back(p.x);
            write_singular_points_csv((dir / ("poles_t" + time_tag(t) + ".csv")).string(), poles);
            log << "t = " << t << ": " << poles.size() << " poles marked\n";
        }
        if (cfg.output.svg)
            write_line_plot_svg((dir / ("profile_t" + time_tag(t) + ".svg")).string(), xs,
                                state_series(state), markers);
    }
    log << "sampled " << times.size() << " time level(s) on " << grid.point_count << " nodes\n";
}

void run_residual(const RunConfig& cfg, const fs::path& dir, std::ostream& log) {
    std::vector<std::pair<double, double>> pts;
    for (double t : cfg.residual_t)
        for (double x : cfg.residual_x) pts.emplace_back(x, t);

    std::vector<ResidualRow> rows;
    double worst = 0.0;
    switch (cfg.residual_kind) {
        case ResidualKind::pde: {
            const auto vals = pde_residual_points(cfg.initial.solution, cfg.system_coefficients(),
                                                  pts, cfg.fd_step);
            for (std::size_t i = 0; i < pts.size(); ++i)
                rows.push_back({pts[i].first, pts[i].second, vals[i]});
            break;
        }
        case ResidualKind::two_component: {
            const auto vals = two_component_residual_points(cfg.initial.solution.params, pts,
                                                            cfg.fd_step);
            for (std::size_t i = 0; i < pts.size(); ++i)
                rows.push_back({pts[i].first, pts[i].second, vals[i]});
            break;
        }
        case ResidualKind::compat: {
            for (const auto& [x, t] : pts)
                rows.push_back({x, t, compatibility_residual(cfg.initial.solution.params, x, t,
                                                             cfg.fd_step)});
            break;
        }
    }
    for (const auto& r : rows) worst = std::max(worst, r.residual);
    if (cfg.output.csv) write_residual_csv((dir / "residuals.csv").string(), rows);
    log << "max residual over " << rows.size() << " points = " << worst
        << " (fd_step = " << cfg.fd_step << ")\n";
}

void run_converge(const RunConfig& cfg, const fs::path& dir, std::ostream& log) {
    const ConvergenceTable table = convergence_study(cfg.system_coefficients(), cfg.initial.solution,
                                                     cfg.x_min, cfg.x_max, cfg.h_list, cfg.stepper,
                                                     cfg.t_end);
    if (cfg.output.csv) write_convergence_csv((dir / "convergence.csv").string(), table);
    for (const auto& r : table.rows)
        log << "h = " << r.h << ", tau = " << r.tau << ": l2 = " << r.error_l2
            << ", linf = " << r.error_linf << ", order(l2) = " << r.observed_order_l2 << "\n";
    log << "least-squares l2 order = " << table.ls_order_l2 << ", finest-level max error = "
        << table.max_percentage_error_finest << "%\n";
}

void run_stability(const RunConfig& cfg, const fs::path& dir, std::ostream& log) {
    auto [grid, state] = load_initial(cfg);
    const double tau = cfg.stepper.auto_tau ? 0.0 : cfg.stepper.tau;
    const StabilityReport rep = stability_exponent(state, cfg.system_coefficients(), grid, tau,
                                                   cfg.stepper.a_max);
    log << "X = " << rep.X << ", Y = " << rep.Y << ", D = " << rep.D << "\n"
        << "a(tau, h) = " << rep.a_value << ", tau_max = " << rep.tau_max << ", stable = "
        << (rep.stable ? "yes" : "no") << "\n";
    if (!rep.diagnostic.empty()) log << rep.diagnostic << "\n";
    if (cfg.output.csv) {
        std::ofstream os((dir / "stability.csv").string());
        os << "a_value,X,Y,D,tau_max,stable\n"
           << rep.a_value << "," << rep.X << "," << rep.Y << "," << rep.D << "," << rep.tau_max
           << "," << (rep.stable ? 1 : 0) << "\n";
    }
}

void run_singularities(const RunConfig& cfg, const fs::path& dir, std::ostream& log) {
    const auto& fam = cfg.initial.solution;
    if (fam.kind != FamilyKind::r_family || !fam.params.r)
        throw validation_error("singularities needs an r-family initial section");
    const auto pts = singular_points(fam.params.a.real(), *fam.params.r,
                                     {cfg.x_min, cfg.x_max, cfg.sing_t_min, cfg.sing_t_max},
                                     cfg.sing_resolution);
    write_singular_points_csv((dir / "singular_points.csv").string(), pts);
    log << pts.size() << " singular point(s) in ["
        << cfg.x_min << ", " << cfg.x_max << "] x [" << cfg.sing_t_min << ", " << cfg.sing_t_max
        << "]\n";
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log) {
    const fs::path dir(cfg.output.directory);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw validation_error("cannot create output directory " + dir.string());

    switch (cfg.command) {
        case Subcommand::simulate: run_simulate(cfg, dir, log); break;
        case Subcommand::analytic: run_analytic(cfg, dir, log); break;
        case Subcommand::residual: run_residual(cfg, dir, log); break;
        case Subcommand::converge: run_converge(cfg, dir, log); break;
        case Subcommand::stability: run_stability(cfg, dir, log); break;
        case Subcommand::singularities: run_singularities(cfg, dir, log); break;
    }
    return 0;
}

int run_config_text(const std::string& text, std::ostream& log) {
    try {
        return run(parse_config(text), log);
    } catch (const validation_error& e) {
        log << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        log << "runtime error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace ckm
