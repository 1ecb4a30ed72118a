#pragma once

// Verification layer: the L2 error norm sqrt(sum_i sum_n v_i^n^2 h),
// percentage errors against an exact reference, continuous right-hand sides
// of the coupled template, finite-difference residuals of the closed forms
// against their governing systems, and grid/step convergence studies.

#include <span>
#include <utility>
#include <vector>

#include "ckm/closed_forms.hpp"
#include "ckm/core.hpp"
#include "ckm/scheme.hpp"

namespace ckm {

double l2_norm(std::span<const double> values, double h);
double l2_norm(const std::vector<std::vector<double>>& components, double h);

struct ComponentError {
    double l2 = 0.0;
    double linf = 0.0;
    double percentage_max = 0.0;
};

struct ErrorReport {
    double l2 = 0.0;
    double linf = 0.0;
    double percentage_max = 0.0;
    std::vector<ComponentError> per_component;
};

/// Errors of `numeric` against `exact` on the same grid, restricted to nodes
/// at least `interior_margin` in from each boundary (zero-ghost pollution).
ErrorReport field_error(const FieldState& numeric, const FieldState& exact, double h,
                        int interior_margin = 8);

/// 100 |numeric - exact| / max_x |exact| per component and node
/// (global-max normalisation). Errors when a component of `exact` is
/// identically zero.
std::vector<std::vector<double>> percentage_error(const FieldState& numeric,
                                                  const FieldState& exact);
double percentage_error_max(const FieldState& numeric, const FieldState& exact);

/// theta^n_t of the continuous template given point values of theta and its
/// first three x-derivatives (type-5 term read as g theta^m theta^k theta^k_x).
std::vector<double> continuous_rhs(const CoefficientSet& coeffs,
                                   std::span<const double> theta,
                                   std::span<const double> theta_x,
                                   std::span<const double> theta_xx,
                                   std::span<const double> theta_xxx);

/// |theta_t - continuous_rhs| of a closed-form family against the template
/// system, spatial derivatives by 4th-order central stencils of step fd_step,
/// the time derivative by the 4th-order central stencil. Evaluated in quad
/// precision. Returns per-point maxima over components.
std::vector<double> pde_residual_points(const SolutionFamily& family, const CoefficientSet& coeffs,
                                        const std::vector<std::pair<double, double>>& points,
                                        double fd_step);
double pde_residual(const SolutionFamily& family, const CoefficientSet& coeffs,
                    const std::vector<std::pair<double, double>>& points, double fd_step);

/// Residual of the two-component closed form against its governing system
/// (outside the template); same stencils and precision.
std::vector<double> two_component_residual_points(const ClosedFormParams& p,
                                                  const std::vector<std::pair<double, double>>& points,
                                                  double fd_step);
double two_component_residual(const ClosedFormParams& p,
                              const std::vector<std::pair<double, double>>& points, double fd_step);

struct ConvergenceRow {
    double h = 0.0;
    double tau = 0.0;
    double error_l2 = 0.0;
    double error_linf = 0.0;
    // log2(e(h)/e(h/2)) against the previous row; NaN on the first row.
    double observed_order_l2 = 0.0;
    double observed_order_linf = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    // Least-squares slope of log error_l2 vs log h across all rows: the
    // study's headline observed order.
    double ls_order_l2 = 0.0;
    double max_percentage_error_finest = 0.0;
};

/// Integrate the system at each h against the closed-form oracle and collect
/// errors at t_end. Instability at a level aborts that row with a diagnostic
/// (the row is skipped, not faked).
ConvergenceTable convergence_study(const CoefficientSet& coeffs, const SolutionFamily& oracle,
                                   double x_min, double x_max, const std::vector<double>& h_list,
                                   const StepperConfig& cfg, double t_end);

}  // namespace ckm
