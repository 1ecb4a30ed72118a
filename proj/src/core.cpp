#include "ckm/core.hpp"

#include <cmath>
#include <sstream>

namespace ckm {

Grid build_grid(double x_min, double x_max, double h) {
    if (!(h > 0.0)) throw validation_error("grid spacing h must be positive");
    if (!(x_max > x_min)) throw validation_error("grid requires x_max > x_min");
    if (x_max - x_min < 4.0 * h)
        throw validation_error("grid narrower than the five-point dispersion stencil (need x_max - x_min >= 4h)");
    Grid g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.h = h;
    g.point_count = static_cast<int>(std::llround((x_max - x_min) / h)) + 1;
    return g;
}

bool FieldState::all_finite() const {
    for (const auto& comp : values)
        for (double v : comp)
            if (!std::isfinite(v)) return false;
    return true;
}

FieldState make_state(int n_components, int point_count, double t) {
    FieldState s;
    s.t = t;
    s.values.assign(static_cast<std::size_t>(n_components),
                    std::vector<double>(static_cast<std::size_t>(point_count), 0.0));
    return s;
}

CoefficientSet::CoefficientSet(int n_components) : n_(n_components) {
    if (n_components < 1) throw validation_error("coefficient set needs at least one component");
    g_.assign(static_cast<std::size_t>(n_) * 5 * n_ * n_, 0.0);
    d_.assign(static_cast<std::size_t>(n_), 0.0);
}

std::size_t CoefficientSet::g_index(int n, int l, int m, int k) const {
    if (n < 1 || n > n_ || m < 1 || m > n_ || k < 1 || k > n_ || l < 1 || l > 5)
        throw validation_error("coefficient index out of range");
    return ((static_cast<std::size_t>(n - 1) * 5 + static_cast<std::size_t>(l - 1)) * n_
            + static_cast<std::size_t>(m - 1)) * n_ + static_cast<std::size_t>(k - 1);
}

double CoefficientSet::max_abs_g() const {
    double m = 0.0;
    for (double v : g_) m = std::max(m, std::fabs(v));
    return m;
}

double CoefficientSet::max_abs_d() const {
    double m = 0.0;
    for (double v : d_) m = std::max(m, std::fabs(v));
    return m;
}

SystemPreset preset_system(std::string_view name) {
    if (name == "kdv-scalar") {
        CoefficientSet c(1);
        c.set_g(1, 1, 1, 1, -1.5);
        c.set_d(1, -0.25);
        return {"kdv-scalar", c, "scalar KdV: u_t - 1/4 u_xxx - 3/2 u u_x = 0"};
    }
    if (name == "kdv-mkdv-3") {
        // Components (1,2,3) = (f,u,v). Entries from expanding the coupled
        // system into the template term types; verified against the
        // continuous-residual harness.
        CoefficientSet c(3);
        c.set_g(1, 1, 1, 2, 1.5);
        c.set_g(1, 1, 2, 1, 1.5);
        c.set_g(1, 2, 1, 1, -0.75);
        c.set_d(1, 0.5);
        c.set_g(2, 1, 2, 2, -1.5);
        c.set_g(2, 1, 3, 3, 3.0);
        c.set_g(2, 2, 1, 2, 0.75);
        c.set_g(2, 3, 1, 3, -1.5);
        c.set_g(2, 4, 3, 1, -1.5);
        c.set_d(2, -0.25);
        c.set_g(3, 1, 2, 3, 1.5);
        c.set_g(3, 2, 1, 3, -0.75);
        c.set_g(3, 3, 1, 2, 1.5);
        c.set_g(3, 4, 1, 2, 0.75);
        c.set_g(3, 5, 3, 1, -1.5);
        c.set_d(3, 0.5);
        return {"kdv-mkdv-3", c, "coupled three-component KdV-MKdV system (f, u, v)"};
    }
    throw validation_error("unknown system preset: " + std::string(name));
}

CoefficientDiagnostics validate_coefficients(const CoefficientSet& c) {
    CoefficientDiagnostics diag;
    const int n = c.n_components();
    diag.nonzero_g_per_equation.assign(static_cast<std::size_t>(n), 0);
    for (int eq = 1; eq <= n; ++eq) {
        for (int l = 1; l <= 5; ++l)
            for (int m = 1; m <= n; ++m)
                for (int k = 1; k <= n; ++k) {
                    double v = c.g(eq, l, m, k);
                    if (std::isnan(v) || std::isinf(v)) {
                        diag.valid = false;
                        diag.issues.push_back("non-finite g entry at (n=" + std::to_string(eq)
                                              + ", l=" + std::to_string(l) + ", m=" + std::to_string(m)
                                              + ", k=" + std::to_string(k) + ")");
                    } else if (v != 0.0) {
                        ++diag.nonzero_g;
                        ++diag.nonzero_g_per_equation[static_cast<std::size_t>(eq - 1)];
                    }
                }
        double dv = c.d(eq);
        if (std::isnan(dv) || std::isinf(dv)) {
            diag.valid = false;
            diag.issues.push_back("non-finite dispersion coefficient d_" + std::to_string(eq));
        } else if (dv != 0.0) {
            ++diag.nonzero_d;
        }
    }
    return diag;
}

std::string CoefficientDiagnostics::summary() const {
    std::ostringstream os;
    os << (valid ? "valid" : "invalid") << ", " << nonzero_g << " nonzero g entries, "
       << nonzero_d << " nonzero d";
    for (const auto& s : issues) os << "; " << s;
    return os.str();
}

}  // namespace ckm
