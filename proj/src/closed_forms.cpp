#include "ckm/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ckm/detail/analytic.hpp"

namespace ckm {

namespace {

detail::SeedParams<double> to_seed(const ClosedFormParams& p) {
    if (std::abs(p.a) == 0.0) throw validation_error("spectral parameter a must be nonzero");
    return {from_std<double>(p.a), from_std<double>(p.c1), from_std<double>(p.c2),
            from_std<double>(p.d1), from_std<double>(p.d2)};
}

double r_denominator(double a, double r, double x, double t) {
    const double e1 = a * a * a * t - a * x;
    const double e2 = a * a * a * t + a * x;
    const double ch = std::cosh(e2), co = std::cos(e1);
    return ch * ch - r * r * co * co;
}

std::complex<double> require_real(std::complex<double> v, double reality_tol, const char* what) {
    if (std::fabs(v.imag()) > reality_tol * std::max(1.0, std::abs(v)))
        throw validation_error(std::string("non-real ") + what + " sampled into a real field state");
    return v;
}

}  // namespace

ClosedFormParams ClosedFormParams::from_ratio(double a, double r) {
    ClosedFormParams p;
    p.a = {a, 0.0};
    p.c1 = p.c2 = {0.5, 0.0};
    p.d1 = p.d2 = {0.5 * r, 0.0};
    p.r = r;
    return p;
}

PhaseVariables PhaseVariables::from(std::complex<double> a, double x, double t, double m) {
    PhaseVariables pv;
    const std::complex<double> a3t = a * a * a * t;
    const std::complex<double> ax = a * x;
    pv.eta1 = a3t - ax;
    pv.eta2 = a3t + ax;
    pv.two_a3t = 2.0 * a3t;
    pv.two_ax = 2.0 * ax;
    pv.zeta1 = 2.0 * m * x + 4.0 * m * m * m * t;
    pv.zeta2 = 2.0 * m * x - 4.0 * m * m * m * t;
    return pv;
}

std::pair<std::complex<double>, std::complex<double>>
seed_pair(const ClosedFormParams& p, double x, double t) {
    const auto s = detail::seed_jets(to_seed(p), x, t);
    return {to_std(s.phi1.value()), to_std(s.phi2.value())};
}

TwoComponentFields two_component_fields(const ClosedFormParams& p, double x, double t,
                                        double pole_tol) {
    const auto r = detail::two_component_eval(to_seed(p), x, t, pole_tol);
    return {to_std(r.f21), to_std(r.u11), to_std(r.u21)};
}

SolutionTriple three_component_fields(const ClosedFormParams& p, double x, double t,
                                      double pole_tol) {
    const auto r = detail::three_component_eval(to_seed(p), x, t, pole_tol);
    return {to_std(r.f), to_std(r.u), to_std(r.v)};
}

SolutionTriple r_family_fields(double a, double r, double x, double t, double pole_tol) {
    const auto out = detail::r_family_eval(a, r, x, t, pole_tol);
    return {{out.f, 0.0}, {out.u, 0.0}, {out.v, 0.0}};
}

std::complex<double> complex_case_field(double m, const ClosedFormParams& constants,
                                        double x, double t, double pole_tol) {
    if (m == 0.0) throw validation_error("complex-case parameter m must be nonzero");
    return to_std(detail::complex_case_eval<double>(
        m, from_std<double>(constants.c1), from_std<double>(constants.c2),
        from_std<double>(constants.d1), from_std<double>(constants.d2), x, t, pole_tol));
}

std::vector<SingularPoint> singular_points(double a, double r, const Window& window,
                                           int resolution) {
    if (!(a > 0.0)) throw validation_error("singular point locator requires a > 0");
    if (window.x_max < window.x_min || window.t_max < window.t_min)
        throw validation_error("singularity window is empty");
    std::vector<SingularPoint> out;
    const double ar = std::fabs(r);
    if (ar < 1.0) return out;

    const double pi = 3.14159265358979323846;
    if (ar == 1.0) {
        const double sx = pi / (2.0 * a);
        const double st = pi / (2.0 * a * a * a);
        const int n_lo = static_cast<int>(std::ceil(std::max(window.x_min / sx, window.t_min / st) - 1e-12));
        const int n_hi = static_cast<int>(std::floor(std::min(window.x_max / sx, window.t_max / st) + 1e-12));
        for (int n = n_lo; n <= n_hi; ++n) {
            const double x = n * sx, t = n * st;
            out.push_back({x, t, r_denominator(a, r, x, t)});
        }
        return out;
    }

    // |r| > 1: bisect sign changes along constant-t scan lines.
    const int nt = (window.t_max > window.t_min) ? resolution : 0;
    const int nx = std::max(resolution, 2);
    for (int j = 0; j <= nt; ++j) {
        const double t = (nt == 0) ? window.t_min
                                   : window.t_min + (window.t_max - window.t_min) * j / nt;
        double x_prev = window.x_min;
        double f_prev = r_denominator(a, r, x_prev, t);
        for (int i = 1; i <= nx; ++i) {
            const double x = window.x_min + (window.x_max - window.x_min) * i / nx;
            const double f = r_denominator(a, r, x, t);
            if (f_prev == 0.0) {
                out.push_back({x_prev, t, f_prev});
            } else if (f * f_prev < 0.0) {
                double lo = x_prev, hi = x, flo = f_prev;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = r_denominator(a, r, mid, t);
                    if (fm == 0.0) { lo = hi = mid; break; }
                    if (fm * flo < 0.0) hi = mid;
                    else { lo = mid; flo = fm; }
                }
                const double root = 0.5 * (lo + hi);
                out.push_back({root, t, r_denominator(a, r, root, t)});
            }
            x_prev = x;
            f_prev = f;
        }
    }
    return out;
}

int family_component_count(const SolutionFamily& family) {
    int natural = 0;
    switch (family.kind) {
        case FamilyKind::two_component:
        case FamilyKind::three_component:
        case FamilyKind::r_family: natural = 3; break;
        case FamilyKind::complex_case: natural = 1; break;
        case FamilyKind::zero: natural = family.zero_components; break;
    }
    if (!family.components.empty()) return static_cast<int>(family.components.size());
    return natural;
}

FieldState sample_on_grid(const SolutionFamily& family, const Grid& grid, double t,
                          double pole_tol, double reality_tol) {
    const int n_out = family_component_count(family);
    FieldState state = make_state(n_out, grid.point_count, t);

    auto store = [&](int node, const std::vector<std::complex<double>>& full) {
        for (int c = 0; c < n_out; ++c) {
            const int src = family.components.empty() ? c : family.components[static_cast<std::size_t>(c)] - 1;
            if (src < 0 || src >= static_cast<int>(full.size()))
                throw validation_error("component selection out of range for family");
            state.values[static_cast<std::size_t>(c)][static_cast<std::size_t>(node)] =
                require_real(full[static_cast<std::size_t>(src)], reality_tol, "solution").real();
        }
    };

    for (int i = 0; i < grid.point_count; ++i) {
        const double x = grid.node(i);
        switch (family.kind) {
            case FamilyKind::zero:
                break;
            case FamilyKind::two_component: {
                const auto v = two_component_fields(family.params, x, t, pole_tol);
                store(i, {v.f21, v.u11, v.u21});
                break;
            }
            case FamilyKind::three_component: {
                const auto v = three_component_fields(family.params, x, t, pole_tol);
                store(i, {v.f, v.u, v.v});
                break;
            }
            case FamilyKind::r_family: {
                if (!family.params.r) throw validation_error("r-family sample requires the ratio r");
                const auto v = r_family_fields(family.params.a.real(), *family.params.r, x, t, pole_tol);
                store(i, {v.f, v.u, v.v});
                break;
            }
            case FamilyKind::complex_case: {
                const auto v = complex_case_field(family.m, family.params, x, t, pole_tol);
                store(i, {v});
                break;
            }
        }
    }
    return state;
}

}  // namespace ckm
