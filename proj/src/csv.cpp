#include "ckm/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ckm {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw validation_error("cannot open output file " + path);
    return os;
}

}  // namespace

std::string snapshot_filename(double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "snapshot_t%012.6f.csv", t);
    return buf;
}

void write_snapshot_csv(const std::string& path, const Grid& grid, const FieldState& state) {
    auto os = open_out(path);
    os << "x";
    for (int n = 1; n <= state.n_components(); ++n) os << ",theta" << n;
    os << "\n";
    for (int i = 0; i < grid.point_count; ++i) {
        os << num(grid.node(i));
        for (const auto& comp : state.values) os << "," << num(comp[static_cast<std::size_t>(i)]);
        os << "\n";
    }
}

std::pair<Grid, FieldState> read_snapshot_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw validation_error("cannot open input file " + path);
    std::string line;
    if (!std::getline(is, line)) throw validation_error("empty snapshot file " + path);
    int n_components = 0;
    {
        std::istringstream hs(line);
        std::string col;
        bool first = true;
        while (std::getline(hs, col, ',')) {
            if (first) {
                if (col != "x") throw validation_error("snapshot header must start with x");
                first = false;
            } else {
                ++n_components;
            }
        }
    }
    std::vector<double> xs;
    std::vector<std::vector<double>> comps(static_cast<std::size_t>(n_components));
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        int col = -1;
        while (std::getline(ls, cell, ',')) {
            double v;
            try {
                v = std::stod(cell);
            } catch (...) {
                throw validation_error(path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
            if (col < 0) xs.push_back(v);
            else comps[static_cast<std::size_t>(col)].push_back(v);
            ++col;
        }
        if (col != n_components)
            throw validation_error(path + ":" + std::to_string(lineno) + ": wrong column count");
    }
    if (xs.size() < 5) throw validation_error("snapshot has fewer than 5 nodes");
    const double h = xs[1] - xs[0];
    for (std::size_t i = 1; i + 1 < xs.size(); ++i)
        if (std::fabs((xs[i + 1] - xs[i]) - h) > 1e-9 * std::max(1.0, std::fabs(h)))
            throw validation_error("snapshot x column is not uniformly spaced");
    const Grid grid = build_grid(xs.front(), xs.back(), h);
    if (grid.point_count != static_cast<int>(xs.size()))
        throw validation_error("snapshot node count is inconsistent with its spacing");
    FieldState state = make_state(n_components, grid.point_count);
    state.values = std::move(comps);
    return {grid, state};
}

void write_long_format_csv(const std::string& path, const Grid& grid,
                           const std::vector<FieldState>& snapshots) {
    auto os = open_out(path);
    os << "t,x,component,value\n";
    for (const auto& s : snapshots)
        for (int n = 0; n < s.n_components(); ++n)
            for (int i = 0; i < grid.point_count; ++i)
                os << num(s.t) << "," << num(grid.node(i)) << "," << (n + 1) << ","
                   << num(s.values[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]) << "\n";
}

void write_singular_points_csv(const std::string& path, const std::vector<SingularPoint>& points) {
    auto os = open_out(path);
    os << "x,t,denominator\n";
    for (const auto& p : points) os << num(p.x) << "," << num(p.t) << "," << num(p.denominator) << "\n";
}

void write_convergence_csv(const std::string& path, const ConvergenceTable& table) {
    auto os = open_out(path);
    os << "h,tau,error_l2,error_linf,observed_order_l2,observed_order_linf\n";
    for (const auto& r : table.rows)
        os << num(r.h) << "," << num(r.tau) << "," << num(r.error_l2) << "," << num(r.error_linf)
           << "," << num(r.observed_order_l2) << "," << num(r.observed_order_linf) << "\n";
}

void write_residual_csv(const std::string& path, const std::vector<ResidualRow>& rows) {
    auto os = open_out(path);
    os << "x,t,residual\n";
    for (const auto& r : rows) os << num(r.x) << "," << num(r.t) << "," << num(r.residual) << "\n";
}

void write_percentage_csv(const std::string& path, const Grid& grid,
                          const std::vector<std::vector<double>>& percentages) {
    auto os = open_out(path);
    os << "x";
    for (std::size_t n = 1; n <= percentages.size(); ++n) os << ",pct" << n;
    os << "\n";
    for (int i = 0; i < grid.point_count; ++i) {
        os << num(grid.node(i));
        for (const auto& comp : percentages) os << "," << num(comp[static_cast<std::size_t>(i)]);
        os << "\n";
    }
}

}  // namespace ckm
