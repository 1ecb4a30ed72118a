#include "ckm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ckm/detail/analytic.hpp"

namespace ckm {

namespace {

// 4th-order central stencils; the 3rd derivative uses the 7-point form.
template <class R, class F>
Cx<R> cfd1(F&& f, R x, R e) {
    return (-f(x + 2 * e) + R(8) * f(x + e) - R(8) * f(x - e) + f(x - 2 * e)) / Cx<R>{R(12) * e};
}

template <class R, class F>
Cx<R> cfd2(F&& f, R x, R e) {
    return (-f(x + 2 * e) + R(16) * f(x + e) - R(30) * f(x) + R(16) * f(x - e) - f(x - 2 * e))
           / Cx<R>{R(12) * e * e};
}

template <class R, class F>
Cx<R> cfd3(F&& f, R x, R e) {
    return (-f(x + 3 * e) + R(8) * f(x + 2 * e) - R(13) * f(x + e) + R(13) * f(x - e)
            - R(8) * f(x - 2 * e) + f(x - 3 * e)) / Cx<R>{R(8) * e * e * e};
}

template <class R>
std::vector<Cx<R>> template_rhs(const CoefficientSet& coeffs, const std::vector<Cx<R>>& th,
                                const std::vector<Cx<R>>& thx, const std::vector<Cx<R>>& thxx,
                                const std::vector<Cx<R>>& thxxx) {
    const int N = coeffs.n_components();
    std::vector<Cx<R>> out(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        Cx<R> s{};
        for (int l = 1; l <= 5; ++l)
            for (int m = 1; m <= N; ++m)
                for (int k = 1; k <= N; ++k) {
                    const double g = coeffs.g(n, l, m, k);
                    if (g == 0.0) continue;
                    const Cx<R> gg{static_cast<R>(g)};
                    const auto M = static_cast<std::size_t>(m - 1);
                    const auto K = static_cast<std::size_t>(k - 1);
                    switch (l) {
                        case 1: s = s + gg * (th[M] * thx[K]); break;
                        case 2: s = s + gg * (th[M] * th[M] * thx[K]); break;
                        case 3: s = s + gg * (thx[M] * thx[K]); break;
                        case 4: s = s + gg * (th[M] * thxx[K]); break;
                        case 5: s = s + gg * (th[M] * th[K] * thx[K]); break;
                    }
                }
        s = s + Cx<R>{static_cast<R>(coeffs.d(n))} * thxxx[static_cast<std::size_t>(n - 1)];
        out[static_cast<std::size_t>(n - 1)] = -s;
    }
    return out;
}

// Evaluate a solution family's components as Cx<qreal> at (x, t).
std::vector<Cx<qreal>> family_values_q(const SolutionFamily& fam, qreal x, qreal t) {
    switch (fam.kind) {
        case FamilyKind::r_family: {
            if (!fam.params.r) throw validation_error("r-family residual requires the ratio r");
            const auto v = detail::r_family_eval<qreal>(static_cast<qreal>(fam.params.a.real()),
                                                        static_cast<qreal>(*fam.params.r), x, t,
                                                        qreal(kPoleTol));
            return {Cx<qreal>{v.f}, Cx<qreal>{v.u}, Cx<qreal>{v.v}};
        }
        case FamilyKind::three_component: {
            detail::SeedParams<qreal> sp{from_std<qreal>(fam.params.a), from_std<qreal>(fam.params.c1),
                                         from_std<qreal>(fam.params.c2), from_std<qreal>(fam.params.d1),
                                         from_std<qreal>(fam.params.d2)};
            const auto v = detail::three_component_eval<qreal>(sp, x, t, qreal(kPoleTol));
            return {v.f, v.u, v.v};
        }
        case FamilyKind::two_component: {
            detail::SeedParams<qreal> sp{from_std<qreal>(fam.params.a), from_std<qreal>(fam.params.c1),
                                         from_std<qreal>(fam.params.c2), from_std<qreal>(fam.params.d1),
                                         from_std<qreal>(fam.params.d2)};
            const auto v = detail::two_component_eval<qreal>(sp, x, t, qreal(kPoleTol));
            return {v.f21, v.u11, v.u21};
        }
        case FamilyKind::zero:
            return std::vector<Cx<qreal>>(static_cast<std::size_t>(fam.zero_components));
        case FamilyKind::complex_case: {
            const auto v = detail::complex_case_eval<qreal>(
                static_cast<qreal>(fam.m), from_std<qreal>(fam.params.c1),
                from_std<qreal>(fam.params.c2), from_std<qreal>(fam.params.d1),
                from_std<qreal>(fam.params.d2), x, t, qreal(kPoleTol));
            return {v};
        }
    }
    throw validation_error("unknown family kind");
}

}  // namespace

double l2_norm(std::span<const double> values, double h) {
    if (!(h > 0.0)) throw validation_error("l2 norm needs h > 0");
    double s = 0.0;
    for (double v : values) s += v * v;
    return std::sqrt(s * h);
}

double l2_norm(const std::vector<std::vector<double>>& components, double h) {
    if (!(h > 0.0)) throw validation_error("l2 norm needs h > 0");
    double s = 0.0;
    for (const auto& comp : components)
        for (double v : comp) s += v * v;
    return std::sqrt(s * h);
}

ErrorReport field_error(const FieldState& numeric, const FieldState& exact, double h,
                        int interior_margin) {
    if (numeric.n_components() != exact.n_components()
        || numeric.point_count() != exact.point_count())
        throw validation_error("field error requires matching shapes");
    const int M = numeric.point_count();
    const int lo = std::min(interior_margin, M / 2);
    const int hi = M - lo;
    ErrorReport rep;
    double total_sq = 0.0;
    for (int n = 0; n < numeric.n_components(); ++n) {
        const auto& a = numeric.values[static_cast<std::size_t>(n)];
        const auto& b = exact.values[static_cast<std::size_t>(n)];
        ComponentError ce;
        double sq = 0.0, ref_max = 0.0;
        for (int i = lo; i < hi; ++i) {
            const double d = a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)];
            sq += d * d;
            ce.linf = std::max(ce.linf, std::fabs(d));
            ref_max = std::max(ref_max, std::fabs(b[static_cast<std::size_t>(i)]));
        }
        ce.l2 = std::sqrt(sq * h);
        ce.percentage_max = ref_max > 0.0 ? 100.0 * ce.linf / ref_max
                                          : std::numeric_limits<double>::quiet_NaN();
        total_sq += sq;
        rep.linf = std::max(rep.linf, ce.linf);
        if (ref_max > 0.0) rep.percentage_max = std::max(rep.percentage_max, ce.percentage_max);
        rep.per_component.push_back(ce);
    }
    rep.l2 = std::sqrt(total_sq * h);
    return rep;
}

std::vector<std::vector<double>> percentage_error(const FieldState& numeric,
                                                  const FieldState& exact) {
    if (numeric.n_components() != exact.n_components()
        || numeric.point_count() != exact.point_count())
        throw validation_error("percentage error requires matching shapes");
    std::vector<std::vector<double>> out;
    for (int n = 0; n < numeric.n_components(); ++n) {
        const auto& a = numeric.values[static_cast<std::size_t>(n)];
        const auto& b = exact.values[static_cast<std::size_t>(n)];
        double ref = 0.0;
        for (double v : b) ref = std::max(ref, std::fabs(v));
        if (ref == 0.0)
            throw validation_error("percentage error undefined: exact component "
                                   + std::to_string(n + 1) + " is identically zero");
        std::vector<double> row(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) row[i] = 100.0 * std::fabs(a[i] - b[i]) / ref;
        out.push_back(std::move(row));
    }
    return out;
}

double percentage_error_max(const FieldState& numeric, const FieldState& exact) {
    double m = 0.0;
    for (const auto& row : percentage_error(numeric, exact))
        for (double v : row) m = std::max(m, v);
    return m;
}

std::vector<double> continuous_rhs(const CoefficientSet& coeffs, std::span<const double> theta,
                                   std::span<const double> theta_x, std::span<const double> theta_xx,
                                   std::span<const double> theta_xxx) {
    const auto N = static_cast<std::size_t>(coeffs.n_components());
    if (theta.size() != N || theta_x.size() != N || theta_xx.size() != N || theta_xxx.size() != N)
        throw validation_error("continuous rhs needs one value set per component");
    auto lift = [](std::span<const double> v) {
        std::vector<Cx<double>> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = Cx<double>{v[i]};
        return out;
    };
    const auto r = template_rhs<double>(coeffs, lift(theta), lift(theta_x), lift(theta_xx),
                                        lift(theta_xxx));
    std::vector<double> out(N);
    for (std::size_t i = 0; i < N; ++i) out[i] = r[i].re;
    return out;
}

std::vector<double> pde_residual_points(const SolutionFamily& family, const CoefficientSet& coeffs,
                                        const std::vector<std::pair<double, double>>& points,
                                        double fd_step) {
    if (!(fd_step > 0.0)) throw validation_error("fd_step must be positive");
    const int N = coeffs.n_components();
    if (family_component_count(family) != N)
        throw validation_error("family component count does not match the system");
    const qreal e = static_cast<qreal>(fd_step);
    std::vector<double> out;
    out.reserve(points.size());
    for (auto [xd, td] : points) {
        const qreal x = static_cast<qreal>(xd), t = static_cast<qreal>(td);
        std::vector<Cx<qreal>> th = family_values_q(family, x, t);
        std::vector<Cx<qreal>> thx(th.size()), thxx(th.size()), thxxx(th.size()), tht(th.size());
        for (std::size_t n = 0; n < th.size(); ++n) {
            auto fx = [&](qreal X) { return family_values_q(family, X, t)[n]; };
            auto ft = [&](qreal T) { return family_values_q(family, x, T)[n]; };
            thx[n] = cfd1(fx, x, e);
            thxx[n] = cfd2(fx, x, e);
            thxxx[n] = cfd3(fx, x, e);
            tht[n] = cfd1(ft, t, e);
        }
        const auto rhs = template_rhs<qreal>(coeffs, th, thx, thxx, thxxx);
        qreal worst = 0;
        for (std::size_t n = 0; n < th.size(); ++n) {
            const qreal r = abs(tht[n] - rhs[n]);
            worst = worst < r ? r : worst;
        }
        out.push_back(static_cast<double>(worst));
    }
    return out;
}

double pde_residual(const SolutionFamily& family, const CoefficientSet& coeffs,
                    const std::vector<std::pair<double, double>>& points, double fd_step) {
    double worst = 0.0;
    for (double r : pde_residual_points(family, coeffs, points, fd_step))
        worst = std::max(worst, r);
    return worst;
}

std::vector<double> two_component_residual_points(const ClosedFormParams& p,
                                                  const std::vector<std::pair<double, double>>& points,
                                                  double fd_step) {
    if (!(fd_step > 0.0)) throw validation_error("fd_step must be positive");
    detail::SeedParams<qreal> sp{from_std<qreal>(p.a), from_std<qreal>(p.c1), from_std<qreal>(p.c2),
                                 from_std<qreal>(p.d1), from_std<qreal>(p.d2)};
    const qreal e = static_cast<qreal>(fd_step);
    auto fields = [&](qreal X, qreal T) {
        const auto v = detail::two_component_eval<qreal>(sp, X, T, qreal(kPoleTol));
        return std::array<Cx<qreal>, 3>{v.f21, v.u11, v.u21};
    };
    std::vector<double> out;
    out.reserve(points.size());
    for (auto [xd, td] : points) {
        const qreal x = static_cast<qreal>(xd), t = static_cast<qreal>(td);
        const auto v = fields(x, t);
        std::array<Cx<qreal>, 3> vx, vxx, vxxx, vt;
        for (std::size_t n = 0; n < 3; ++n) {
            auto fx = [&](qreal X) { return fields(X, t)[n]; };
            auto ft = [&](qreal T) { return fields(x, T)[n]; };
            vx[n] = cfd1(fx, x, e);
            vxx[n] = cfd2(fx, x, e);
            vxxx[n] = cfd3(fx, x, e);
            vt[n] = cfd1(ft, t, e);
        }
        const Cx<qreal> f = v[0], u = v[1], w = v[2];
        // f21_t + 1/2 f21_xxx + 3/4 f21 u11_x + 3/2 u11 u21 = 0
        const Cx<qreal> r1 = vt[0] + qreal(0.5) * vxxx[0] + qreal(0.75) * (f * vx[1])
                             + qreal(1.5) * (u * w);
        // u11_t - 1/4 u11_xxx - 3/2 u11 u11_x = 0
        const Cx<qreal> r2 = vt[1] - qreal(0.25) * vxxx[1] - qreal(1.5) * (u * vx[1]);
        // u21_t + 1/2 u21_xxx + 3/4 u21 u11_x + 3/2 u21_x u11
        //   - 3/4 u11 f21_xx - 3/4 u11^2 f21 = 0
        const Cx<qreal> r3 = vt[2] + qreal(0.5) * vxxx[2] + qreal(0.75) * (w * vx[1])
                             + qreal(1.5) * (vx[2] * u) - qreal(0.75) * (u * vxx[0])
                             - qreal(0.75) * (u * u * f);
        qreal worst = abs(r1);
        for (Cx<qreal> r : {r2, r3}) worst = worst < abs(r) ? abs(r) : worst;
        out.push_back(static_cast<double>(worst));
    }
    return out;
}

double two_component_residual(const ClosedFormParams& p,
                              const std::vector<std::pair<double, double>>& points,
                              double fd_step) {
    double worst = 0.0;
    for (double r : two_component_residual_points(p, points, fd_step)) worst = std::max(worst, r);
    return worst;
}

ConvergenceTable convergence_study(const CoefficientSet& coeffs, const SolutionFamily& oracle,
                                   double x_min, double x_max, const std::vector<double>& h_list,
                                   const StepperConfig& cfg, double t_end) {
    if (h_list.size() < 3) throw validation_error("convergence study needs at least 3 grid levels");
    std::vector<double> hs = h_list;
    std::sort(hs.begin(), hs.end(), std::greater<>());

    ConvergenceTable table;
    for (double h : hs) {
        const Grid grid = build_grid(x_min, x_max, h);
        const FieldState init = sample_on_grid(oracle, grid, 0.0);
        const auto run = integrate(init, coeffs, grid, t_end, cfg, {t_end});
        const FieldState exact = sample_on_grid(oracle, grid, t_end);
        const ErrorReport err = field_error(run.snapshots.back(), exact, h);

        ConvergenceRow row;
        row.h = h;
        row.tau = run.diagnostics.tau_used;
        row.error_l2 = err.l2;
        row.error_linf = err.linf;
        row.observed_order_l2 = std::numeric_limits<double>::quiet_NaN();
        row.observed_order_linf = std::numeric_limits<double>::quiet_NaN();
        if (!table.rows.empty()) {
            const auto& prev = table.rows.back();
            const double ratio = std::log(prev.h / h);
            row.observed_order_l2 = std::log(prev.error_l2 / err.l2) / ratio;
            row.observed_order_linf = std::log(prev.error_linf / err.linf) / ratio;
        }
        table.rows.push_back(row);
        table.max_percentage_error_finest = err.percentage_max;
    }

    // Least-squares slope of log e vs log h.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(table.rows.size());
    for (const auto& r : table.rows) {
        const double lx = std::log(r.h), ly = std::log(r.error_l2);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    table.ls_order_l2 = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return table;
}

}  // namespace ckm
