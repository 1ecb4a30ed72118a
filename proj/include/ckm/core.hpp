#pragma once

// Shared domain types: grids, multi-component field states, the coefficient
// tensor of the general coupled KdV-MKdV template
//
//   theta^n_t + sum_{m,k} ( g^{n,1}_{m,k} theta^m theta^k_x
//                         + g^{n,2}_{m,k} (theta^m)^2 theta^k_x
//                         + g^{n,3}_{m,k} theta^m_x theta^k_x
//                         + g^{n,4}_{m,k} theta^m theta^k_xx
//                         + g^{n,5}_{m,k} theta^m theta^k theta^k_x )
//                         + d_n theta^n_xxx = 0
//
// and named presets. Component and term indices are 1-based in the public
// accessors; storage is dense.

#include <string>
#include <string_view>
#include <vector>

#include "ckm/errors.hpp"

namespace ckm {

struct Grid {
    double x_min = 0.0;
    double x_max = 0.0;
    double h = 0.0;
    int point_count = 0;

    // Node coordinates are exactly x_min + k*h.
    double node(int k) const { return x_min + static_cast<double>(k) * h; }
};

/// Uniform grid over [x_min, x_max]. Requires h > 0 and a domain at least
/// four cells wide (the dispersion stencil spans i-2..i+2).
Grid build_grid(double x_min, double x_max, double h);

struct FieldState {
    double t = 0.0;
    std::vector<std::vector<double>> values;  // [component][node]

    int n_components() const { return static_cast<int>(values.size()); }
    int point_count() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }
    bool all_finite() const;
};

FieldState make_state(int n_components, int point_count, double t = 0.0);

class CoefficientSet {
public:
    CoefficientSet() = default;
    explicit CoefficientSet(int n_components);

    int n_components() const { return n_; }

    // 1-based indices: n, m, k in 1..N, l in 1..5.
    double g(int n, int l, int m, int k) const { return g_[g_index(n, l, m, k)]; }
    void set_g(int n, int l, int m, int k, double value) { g_[g_index(n, l, m, k)] = value; }
    double d(int n) const { return d_[static_cast<std::size_t>(n - 1)]; }
    void set_d(int n, double value) { d_[static_cast<std::size_t>(n - 1)] = value; }

    double max_abs_g() const;
    double max_abs_d() const;

    bool operator==(const CoefficientSet&) const = default;

private:
    std::size_t g_index(int n, int l, int m, int k) const;
    int n_ = 0;
    std::vector<double> g_;
    std::vector<double> d_;
};

struct SystemPreset {
    std::string name;
    CoefficientSet coefficients;
    std::string description;
};

/// Known presets: "kdv-scalar" (u_t - 1/4 u_xxx - 3/2 u u_x = 0) and
/// "kdv-mkdv-3" (the integrable three-component system, components f, u, v).
SystemPreset preset_system(std::string_view name);

struct CoefficientDiagnostics {
    bool valid = true;
    int nonzero_g = 0;
    int nonzero_d = 0;
    std::vector<int> nonzero_g_per_equation;
    std::vector<std::string> issues;
    std::string summary() const;
};

CoefficientDiagnostics validate_coefficients(const CoefficientSet& c);

}  // namespace ckm
