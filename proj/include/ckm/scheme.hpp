#pragma once

// Explicit finite-difference scheme for the coupled template on a uniform
// grid with zero ghost nodes (Cauchy data decaying at both infinities):
//
//   theta^{n,j+1}_i = theta^{n,j}_i - tau * [ nonlinear bracket
//                     + d_n (theta_{i+2} - 2 theta_{i+1} + 2 theta_{i-1} - theta_{i-2}) / 2h^3 ]
//
// with the conditional-stability exponent
//
//   a(tau, h) = 2X + tau (X + Y/h + 3D/h^3)^2,
//   X = max|g| max|theta_x|^2,  Y = max|g| max|theta|^2,  D = max|d_n|,
//
// and the step guard tau <= tau_max where a(tau_max, h) = a_max.

#include <string>
#include <vector>

#include "ckm/core.hpp"

namespace ckm {

struct StepperConfig {
    double tau = 0.0;          // used when auto_tau is false
    bool auto_tau = true;      // tau = stability_margin * tau_max from the initial state
    double stability_margin = 0.9;
    double a_max = 10.0;
    bool allow_tau_above_max = false;
    // Alternative theta^m theta^k_xx stencil dividing the second difference
    // by 2h instead of h^2. Inconsistent with the continuous system; kept
    // for comparison runs only.
    bool type4_over_2h = false;
};

struct StabilityReport {
    double a_value = 0.0;
    double X = 0.0;  // gradient-product term, max|g| max|theta_x|^2
    double Y = 0.0;  // field-product term, max|g| max|theta|^2
    double D = 0.0;  // max dispersion magnitude
    double tau_max = 0.0;  // infinite when the quadratic term vanishes
    bool stable = false;
    std::string diagnostic;
};

/// The bracket of the scheme at every node (nonlinear sum plus dispersion),
/// so that step() is state - tau * rates. Ghost values outside the grid are
/// zero. Throws blowup_error when a non-finite rate appears.
void discrete_rhs(const FieldState& state, const CoefficientSet& coeffs, const Grid& grid,
                  std::vector<std::vector<double>>& rates, bool type4_over_2h = false);

FieldState step(const FieldState& state, const CoefficientSet& coeffs, const Grid& grid,
                double tau, bool type4_over_2h = false);

StabilityReport stability_exponent(const FieldState& state, const CoefficientSet& coeffs,
                                   const Grid& grid, double tau, double a_max = 10.0);

struct IntegrationDiagnostics {
    double tau_used = 0.0;
    StabilityReport initial_stability;
    std::vector<std::string> warnings;
    // Per snapshot: discrete mass sum_i theta^n_i h per component, and the
    // field L2 norm (both conservation-law candidates).
    std::vector<std::vector<double>> mass;
    std::vector<double> l2_norm;
    double running_max_abs = 0.0;
    long long steps_taken = 0;
};

struct IntegrationResult {
    std::vector<FieldState> snapshots;
    IntegrationDiagnostics diagnostics;
};

/// March the scheme from the initial state to t_end, recording states at the
/// requested snapshot times (each must lie in [initial.t, t_end]; partial
/// steps land on them exactly). Auto-tau is fixed from the initial state.
IntegrationResult integrate(const FieldState& initial, const CoefficientSet& coeffs,
                            const Grid& grid, double t_end, const StepperConfig& cfg,
                            const std::vector<double>& snapshot_times);

}  // namespace ckm
