#pragma once

// Run configuration: a small sectioned key-value format.
//
//   [run]
//   command = simulate            ; simulate|analytic|residual|converge|
//                                 ; stability|singularities
//   [system]
//   preset = kdv-mkdv-3           ; or explicit entries, repeatable:
//   ; g = n l m k value
//   ; d = n value
//   [grid]
//   x_min = -20
//   x_max = 20
//   h = 0.25
//   [time]
//   t_end = 0.1
//   tau = auto                    ; or a number
//   snapshots = 0 0.05 0.1
//   stability_margin = 0.9
//   a_max = 10
//   allow_tau_above_max = false
//   type4_over_2h = false        ; comparison-only stencil variant
//   [initial]
//   family = r-family             ; two-component|three-component|r-family|
//                                 ; complex-case|zero|csv
//   a = 1
//   r = 0.5
//   ; c1 = re [im]   (likewise c2, d1, d2)
//   ; m = 1          (complex-case)
//   ; components = 2 ...          (optional 1-based selection)
//   ; path = state.csv            (family = csv)
//   ; zero_components = 1
//   [output]
//   directory = out
//   csv = true
//   svg = false
//   long_format = false
//   errors = false
//   [residual]
//   kind = pde                    ; pde|two-component|compat
//   fd_step = 1e-3
//   x = -2 -1 0 1 2
//   t = 0 0.05 0.1 0.15 0.2
//   [converge]
//   h_list = 0.4 0.2 0.1
//   [singularities]
//   t_min = -1
//   t_max = 1
//   resolution = 400
//
// Comments start with '#' or ';'. Unknown sections or keys are errors.

#include <optional>
#include <string>
#include <vector>

#include "ckm/closed_forms.hpp"
#include "ckm/core.hpp"
#include "ckm/scheme.hpp"

namespace ckm {

enum class Subcommand { simulate, analytic, residual, converge, stability, singularities };

enum class ResidualKind { pde, two_component, compat };

struct InitialSpec {
    std::string family = "zero";  // family name or "csv"
    SolutionFamily solution;      // resolved family (when not csv)
    std::string csv_path;         // when family == "csv"
    bool operator==(const InitialSpec&) const;
};

struct OutputSpec {
    std::string directory = "out";
    bool csv = true;
    bool svg = false;
    bool long_format = false;
    bool errors = false;
    bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
    Subcommand command = Subcommand::simulate;
    std::string preset;            // empty when explicit coefficients given
    std::optional<CoefficientSet> explicit_coefficients;
    double x_min = -20.0, x_max = 20.0, h = 0.25;
    double t_end = 0.0;
    StepperConfig stepper;
    std::vector<double> snapshots;
    InitialSpec initial;
    OutputSpec output;
    ResidualKind residual_kind = ResidualKind::pde;
    double fd_step = 1e-3;
    std::vector<double> residual_x, residual_t;
    std::vector<double> h_list;
    double sing_t_min = 0.0, sing_t_max = 0.0;
    int sing_resolution = 400;

    bool operator==(const RunConfig&) const;
    CoefficientSet system_coefficients() const;
};

/// Parse and validate. Syntax errors carry the line number; unknown keys and
/// cross-field violations are validation errors.
RunConfig parse_config(const std::string& text);

/// Canonical text form; parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& config);

const char* subcommand_name(Subcommand c);

}  // namespace ckm
