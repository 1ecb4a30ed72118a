#include "ckm/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ckm {

namespace {

double ghosted(const std::vector<double>& v, int i) {
    if (i < 0 || i >= static_cast<int>(v.size())) return 0.0;
    return v[static_cast<std::size_t>(i)];
}

void check_compatible(const FieldState& state, const CoefficientSet& coeffs, const Grid& grid) {
    if (state.n_components() != coeffs.n_components())
        throw validation_error("state and coefficient set disagree on component count");
    if (state.point_count() != grid.point_count)
        throw validation_error("state and grid disagree on node count");
    if (grid.point_count < 5)
        throw validation_error("grid too small for the five-point stencil");
}

double kahan_sum(const std::vector<double>& v) {
    double s = 0.0, c = 0.0;
    for (double x : v) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

}  // namespace

void discrete_rhs(const FieldState& state, const CoefficientSet& coeffs, const Grid& grid,
                  std::vector<std::vector<double>>& rates, bool type4_over_2h) {
    check_compatible(state, coeffs, grid);
    const int N = state.n_components();
    const int M = grid.point_count;
    const double h = grid.h;
    rates.assign(static_cast<std::size_t>(N), std::vector<double>(static_cast<std::size_t>(M), 0.0));

    for (int n = 1; n <= N; ++n) {
        auto& out = rates[static_cast<std::size_t>(n - 1)];
        for (int l = 1; l <= 5; ++l) {
            for (int m = 1; m <= N; ++m) {
                for (int k = 1; k <= N; ++k) {
                    const double g = coeffs.g(n, l, m, k);
                    if (g == 0.0) continue;
                    const auto& tm = state.values[static_cast<std::size_t>(m - 1)];
                    const auto& tk = state.values[static_cast<std::size_t>(k - 1)];
                    for (int i = 0; i < M; ++i) {
                        const double dk = (ghosted(tk, i + 1) - ghosted(tk, i - 1)) / (2.0 * h);
                        double term = 0.0;
                        switch (l) {
                            case 1: term = tm[static_cast<std::size_t>(i)] * dk; break;
                            case 2: {
                                const double v = tm[static_cast<std::size_t>(i)];
                                term = v * v * dk;
                                break;
                            }
                            case 3:
                                term = (ghosted(tm, i + 1) - ghosted(tm, i - 1)) / (2.0 * h) * dk;
                                break;
                            case 4: {
                                const double dd = ghosted(tk, i + 1) - 2.0 * ghosted(tk, i)
                                                  + ghosted(tk, i - 1);
                                term = tm[static_cast<std::size_t>(i)] * dd
                                       / (type4_over_2h ? 2.0 * h : h * h);
                                break;
                            }
                            case 5:
                                term = tm[static_cast<std::size_t>(i)]
                                       * tk[static_cast<std::size_t>(i)] * dk;
                                break;
                        }
                        out[static_cast<std::size_t>(i)] += g * term;
                    }
                }
            }
        }
        const double d = coeffs.d(n);
        if (d != 0.0) {
            const auto& tn = state.values[static_cast<std::size_t>(n - 1)];
            const double s = d / (2.0 * h * h * h);
            for (int i = 0; i < M; ++i)
                out[static_cast<std::size_t>(i)] += s * (ghosted(tn, i + 2) - 2.0 * ghosted(tn, i + 1)
                                                         + 2.0 * ghosted(tn, i - 1) - ghosted(tn, i - 2));
        }
        for (double v : out)
            if (!std::isfinite(v))
                throw blowup_error("non-finite rate in the discrete right-hand side", state.t);
    }
}

FieldState step(const FieldState& state, const CoefficientSet& coeffs, const Grid& grid,
                double tau, bool type4_over_2h) {
    if (!(tau > 0.0)) throw validation_error("time step tau must be positive");
    std::vector<std::vector<double>> rates;
    discrete_rhs(state, coeffs, grid, rates, type4_over_2h);
    FieldState next = state;
    next.t = state.t + tau;
    for (int n = 0; n < state.n_components(); ++n) {
        auto& dst = next.values[static_cast<std::size_t>(n)];
        const auto& r = rates[static_cast<std::size_t>(n)];
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= tau * r[i];
    }
    return next;
}

StabilityReport stability_exponent(const FieldState& state, const CoefficientSet& coeffs,
                                   const Grid& grid, double tau, double a_max) {
    check_compatible(state, coeffs, grid);
    const double h = grid.h;
    double max_theta = 0.0, max_theta_x = 0.0;
    for (const auto& comp : state.values) {
        const int M = static_cast<int>(comp.size());
        for (int i = 0; i < M; ++i) {
            max_theta = std::max(max_theta, std::fabs(comp[static_cast<std::size_t>(i)]));
            max_theta_x = std::max(max_theta_x,
                                   std::fabs((ghosted(comp, i + 1) - ghosted(comp, i - 1)) / (2.0 * h)));
        }
    }
    StabilityReport rep;
    rep.X = coeffs.max_abs_g() * max_theta_x * max_theta_x;
    rep.Y = coeffs.max_abs_g() * max_theta * max_theta;
    rep.D = coeffs.max_abs_d();
    const double quad = rep.X + rep.Y / h + 3.0 * rep.D / (h * h * h);
    rep.a_value = 2.0 * rep.X + tau * quad * quad;
    if (quad == 0.0) {
        rep.tau_max = std::numeric_limits<double>::infinity();
        rep.stable = 2.0 * rep.X <= a_max;
    } else if (a_max <= 2.0 * rep.X) {
        rep.tau_max = 0.0;
        rep.stable = false;
        std::ostringstream os;
        os << "no admissible step: a_max = " << a_max << " <= 2X = " << 2.0 * rep.X
           << "; raise a_max or shrink the state";
        rep.diagnostic = os.str();
    } else {
        rep.tau_max = (a_max - 2.0 * rep.X) / (quad * quad);
        rep.stable = tau <= rep.tau_max;
    }
    return rep;
}

IntegrationResult integrate(const FieldState& initial, const CoefficientSet& coeffs,
                            const Grid& grid, double t_end, const StepperConfig& cfg,
                            const std::vector<double>& snapshot_times) {
    check_compatible(initial, coeffs, grid);
    if (t_end < initial.t) throw validation_error("t_end precedes the initial time");
    for (double s : snapshot_times)
        if (s < initial.t - 1e-14 || s > t_end + 1e-14)
            throw validation_error("snapshot time outside [initial.t, t_end]");
    if (!initial.all_finite()) throw validation_error("initial state contains non-finite values");

    IntegrationResult result;
    auto& diag = result.diagnostics;

    // Boundary-decay check: the zero-ghost policy assumes data rapidly
    // decreasing at both infinities.
    const int band = std::min(4, grid.point_count / 2);
    for (int n = 0; n < initial.n_components(); ++n) {
        const auto& comp = initial.values[static_cast<std::size_t>(n)];
        double peak = 0.0;
        for (double v : comp) peak = std::max(peak, std::fabs(v));
        double edge = 0.0;
        for (int i = 0; i < band; ++i) {
            edge = std::max(edge, std::fabs(comp[static_cast<std::size_t>(i)]));
            edge = std::max(edge, std::fabs(comp[comp.size() - 1 - static_cast<std::size_t>(i)]));
        }
        if (peak > 0.0 && edge > 1e-6 * peak) {
            std::ostringstream os;
            os << "component " << (n + 1) << " has boundary magnitude " << edge
               << " above 1e-6 of its peak " << peak << "; zero-ghost boundaries will pollute the run";
            diag.warnings.push_back(os.str());
        }
    }

    double tau = cfg.tau;
    diag.initial_stability = stability_exponent(initial, coeffs, grid,
                                                cfg.auto_tau ? 0.0 : cfg.tau, cfg.a_max);
    if (cfg.auto_tau) {
        if (!(diag.initial_stability.tau_max > 0.0))
            throw instability_error("auto step selection failed: " + diag.initial_stability.diagnostic);
        if (std::isinf(diag.initial_stability.tau_max))
            throw validation_error("auto step selection needs a dispersive or nonlinear system");
        tau = cfg.stability_margin * diag.initial_stability.tau_max;
    } else {
        if (!(tau > 0.0)) throw validation_error("explicit tau must be positive");
        if (tau > diag.initial_stability.tau_max && !cfg.allow_tau_above_max) {
            std::ostringstream os;
            os << "tau = " << tau << " exceeds tau_max = " << diag.initial_stability.tau_max
               << " (a_max = " << cfg.a_max << "); pass the override to run anyway";
            throw instability_error(os.str());
        }
    }
    diag.tau_used = tau;

    std::vector<double> stops = snapshot_times;
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

    auto record = [&](const FieldState& s) {
        result.snapshots.push_back(s);
        std::vector<double> mass;
        for (const auto& comp : s.values) {
            double m = kahan_sum(comp) * grid.h;
            mass.push_back(m);
        }
        diag.mass.push_back(std::move(mass));
        double sq = 0.0;
        for (const auto& comp : s.values)
            for (double v : comp) sq += v * v;
        diag.l2_norm.push_back(std::sqrt(sq * grid.h));
    };

    FieldState state = initial;
    std::size_t next_stop = 0;
    while (next_stop < stops.size() && stops[next_stop] <= state.t + 1e-14) {
        record(state);
        ++next_stop;
    }

    const double eps = 1e-12 * std::max(1.0, std::fabs(t_end));
    while (state.t < t_end - eps) {
        double dt = tau;
        if (next_stop < stops.size()) dt = std::min(dt, stops[next_stop] - state.t);
        dt = std::min(dt, t_end - state.t);
        state = step(state, coeffs, grid, dt, cfg.type4_over_2h);
        ++diag.steps_taken;
        for (const auto& comp : state.values)
            for (double v : comp) {
                if (!std::isfinite(v)) throw blowup_error("field blew up", state.t);
                diag.running_max_abs = std::max(diag.running_max_abs, std::fabs(v));
            }
        if (next_stop < stops.size() && state.t >= stops[next_stop] - 1e-14) {
            record(state);
            ++next_stop;
        }
    }
    if (stops.empty()) record(state);
    return result;
}

}  // namespace ckm
