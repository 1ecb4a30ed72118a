#pragma once

// Exact solutions generated by elementary Darboux transformations on the
// zero seed: the two-component fields, the three-component (f, u, v) triple,
// its one-parameter r-family, and the complex-spectral-parameter case.
// Includes pole location and grid sampling.

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "ckm/core.hpp"

namespace ckm {

inline constexpr double kPoleTol = 1e-12;
inline constexpr double kRealityTol = 1e-12;

struct ClosedFormParams {
    std::complex<double> a{1.0, 0.0};  // spectral parameter a = sqrt(lambda)
    std::complex<double> c1{0.5, 0.0};
    std::complex<double> c2{0.5, 0.0};
    std::complex<double> d1{0.5, 0.0};
    std::complex<double> d2{0.5, 0.0};
    std::optional<double> r;  // when set: c1 = c2 = 1/2, d1 = d2 = r/2

    // The continuous-solution normalisation c1 = c2 = 1/2, d1 = d2 = r/2.
    static ClosedFormParams from_ratio(double a, double r);
};

// Phases eta1 = a^3 t - a x, eta2 = a^3 t + a x (and the complex-case
// zeta1 = 2mx + 4m^3 t, zeta2 = 2mx - 4m^3 t). The products a^3 t and a x are
// stored so that the pair identities eta1 + eta2 = 2 a^3 t and
// eta2 - eta1 = 2 a x are available exactly via two_a3t / two_ax; the rounded
// sum of the eta fields themselves cannot represent them exactly.
struct PhaseVariables {
    std::complex<double> eta1, eta2;
    std::complex<double> two_a3t, two_ax;
    double zeta1 = 0.0, zeta2 = 0.0;

    static PhaseVariables from(std::complex<double> a, double x, double t, double m = 0.0);
};

struct SolutionTriple {
    std::complex<double> f, u, v;
};

struct TwoComponentFields {
    std::complex<double> f21, u11, u21;
};

/// Zero-seed solutions of the spectral pair:
/// phi1 = c1 e^{ax + a^3 t} + c2 e^{-(ax + a^3 t)},
/// phi2 = d1 e^{i(ax - a^3 t)} + d2 e^{-i(ax - a^3 t)}.
std::pair<std::complex<double>, std::complex<double>>
seed_pair(const ClosedFormParams& p, double x, double t);

TwoComponentFields two_component_fields(const ClosedFormParams& p, double x, double t,
                                        double pole_tol = kPoleTol);

SolutionTriple three_component_fields(const ClosedFormParams& p, double x, double t,
                                      double pole_tol = kPoleTol);

SolutionTriple r_family_fields(double a, double r, double x, double t,
                               double pole_tol = kPoleTol);

/// lambda = -2 i m^2 with the principal branch a = sqrt(lambda); returns the
/// f component, which is real for the symmetric constant choice and complex
/// in general.
std::complex<double> complex_case_field(double m, const ClosedFormParams& constants,
                                        double x, double t, double pole_tol = kPoleTol);

struct Window {
    double x_min, x_max, t_min, t_max;
};

struct SingularPoint {
    double x, t;
    double denominator;  // cosh^2(eta2) - r^2 cos^2(eta1) at the point
};

/// Poles of the r-family. |r| < 1: none (denominator >= 1 - r^2). |r| = 1:
/// the lattice (n pi / 2a, n pi / 2a^3), n integer, clipped to the window.
/// |r| > 1: sign changes of the denominator located by bisection along
/// t = const scan lines.
std::vector<SingularPoint> singular_points(double a, double r, const Window& window,
                                           int resolution = 400);

enum class FamilyKind { two_component, three_component, r_family, complex_case, zero };

struct SolutionFamily {
    FamilyKind kind = FamilyKind::r_family;
    ClosedFormParams params;
    double m = 1.0;                // complex-case parameter
    int zero_components = 1;       // component count for the zero family
    std::vector<int> components;   // optional 1-based selection; empty = all
};

int family_component_count(const SolutionFamily& family);

/// Evaluate the family on every grid node at time t into a real FieldState.
/// Components with imaginary part above reality_tol (relative) are an error,
/// as is any node within pole_tol of a pole.
FieldState sample_on_grid(const SolutionFamily& family, const Grid& grid, double t,
                          double pole_tol = kPoleTol, double reality_tol = kRealityTol);

}  // namespace ckm
