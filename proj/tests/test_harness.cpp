#include <doctest.h>

#include <cmath>
#include <random>

#include "ckm/harness.hpp"

using namespace ckm;

namespace {

SolutionFamily r_family(double a, double r) {
    SolutionFamily fam;
    fam.kind = FamilyKind::r_family;
    fam.params = ClosedFormParams::from_ratio(a, r);
    return fam;
}

std::vector<std::pair<double, double>> sample_5x5() {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) pts.emplace_back(-2.0 + i, 0.05 * j);
    return pts;
}

}  // namespace

TEST_CASE("l2 norm examples and properties") {
    CHECK(l2_norm(std::vector<double>{0, 0, 0}, 0.5) == 0.0);
    CHECK(l2_norm(std::vector<double>{3, 4}, 0.5) == doctest::Approx(3.5355339059327378).epsilon(1e-15));

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a(32), b(32), sum(32);
        for (int i = 0; i < 32; ++i) {
            a[static_cast<std::size_t>(i)] = val(rng);
            b[static_cast<std::size_t>(i)] = val(rng);
            sum[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)];
        }
        const double s = val(rng);
        std::vector<double> scaled(32);
        for (int i = 0; i < 32; ++i) scaled[static_cast<std::size_t>(i)] = s * a[static_cast<std::size_t>(i)];
        CHECK(l2_norm(scaled, 0.25) == doctest::Approx(std::fabs(s) * l2_norm(a, 0.25)).epsilon(1e-12));
        CHECK(l2_norm(sum, 0.25) <= l2_norm(a, 0.25) + l2_norm(b, 0.25) + 1e-12);
        CHECK(l2_norm(a, 0.25) >= 0.0);
    }
}

TEST_CASE("percentage error definition and properties") {
    FieldState exact = make_state(1, 6);
    FieldState num = make_state(1, 6);
    for (int i = 0; i < 6; ++i) exact.values[0][static_cast<std::size_t>(i)] = (i == 3) ? 2.0 : 0.5;
    num = exact;
    CHECK(percentage_error_max(num, exact) == 0.0);

    num.values[0][2] += 0.02;  // |diff| = 0.02 against component max 2 -> 1%
    CHECK(percentage_error_max(num, exact) == doctest::Approx(1.0).epsilon(1e-12));

    // invariant under joint positive rescaling
    FieldState num2 = num, exact2 = exact;
    for (auto& v : num2.values[0]) v *= 7.5;
    for (auto& v : exact2.values[0]) v *= 7.5;
    CHECK(percentage_error_max(num2, exact2) == doctest::Approx(1.0).epsilon(1e-12));

    FieldState zero = make_state(1, 6);
    CHECK_THROWS_AS(percentage_error(num, zero), validation_error);
}

TEST_CASE("continuous rhs examples") {
    const auto kdv = preset_system("kdv-scalar").coefficients;
    const std::vector<double> z{0.0};
    CHECK(continuous_rhs(kdv, z, z, z, z)[0] == 0.0);

    // theta = 2 sech^2(x) at x = 0: theta_x = theta_xxx = 0 there
    const std::vector<double> th{2.0}, dx{0.0}, dxx{-4.0}, dxxx{0.0};
    CHECK(continuous_rhs(kdv, th, dx, dxx, dxxx)[0] == 0.0);

    // single nonzero type-1 term: theta_t = -g theta^m theta^k_x - d theta_xxx
    const std::vector<double> th2{1.5}, dx2{0.4}, dxx2{0.0}, dxxx2{2.0};
    CHECK(continuous_rhs(kdv, th2, dx2, dxx2, dxxx2)[0]
          == doctest::Approx(-(-1.5 * 1.5 * 0.4 + -0.25 * 2.0)).epsilon(1e-15));
}

TEST_CASE("pde residual of the r-family against the three-component system") {
    const auto coeffs = preset_system("kdv-mkdv-3").coefficients;
    const auto pts = sample_5x5();
    const double r1 = pde_residual(r_family(1.0, 0.5), coeffs, pts, 1e-3);
    const double r2 = pde_residual(r_family(1.0, 0.5), coeffs, pts, 5e-4);
    CHECK(r1 < 1e-6);
    CHECK(r1 == doctest::Approx(2.255e-9).epsilon(0.02));  // quad-oracle truncation level
    CHECK(r1 / r2 == doctest::Approx(16.0).epsilon(0.05));
}

TEST_CASE("pde residual flags scaled non-solution fields") {
    const auto coeffs = preset_system("kdv-mkdv-3").coefficients;
    SolutionFamily fam = r_family(1.0, 0.5);
    // scaling the constants by 1.1 scales d1, d2 only: no longer a solution
    // of the same coefficient set? Scale the amplitude instead through a
    // mismatched system: use the scalar-KdV coefficients against the family.
    auto bad = preset_system("kdv-mkdv-3").coefficients;
    bad.set_g(2, 1, 2, 2, -1.5 * 1.1);
    const auto pts = sample_5x5();
    const double r1 = pde_residual(fam, bad, pts, 1e-3);
    const double r2 = pde_residual(fam, bad, pts, 5e-4);
    CHECK(r1 > 0.1);
    CHECK(std::fabs(r1 - r2) < 0.05 * r1);
}

TEST_CASE("two-component residual against its governing system") {
    ClosedFormParams p;  // symmetric constants 1/2
    const auto pts = sample_5x5();
    const double r1 = two_component_residual(p, pts, 1e-3);
    const double r2 = two_component_residual(p, pts, 5e-4);
    CHECK(r1 < 1e-6);
    CHECK(r1 / r2 == doctest::Approx(16.0).epsilon(0.1));

    // generic complex-valued d constants still solve the system
    ClosedFormParams q;
    q.d1 = {0.3, 0.0};
    q.d2 = {0.7, 0.0};
    CHECK(two_component_residual(q, pts, 1e-3) < 1e-6);
}

TEST_CASE("observed order definition") {
    // errors 0.4 and 0.1 across a halving: order 2 exactly
    ConvergenceTable t;
    t.rows.push_back({0.4, 1e-5, 0.4, 0.4, std::nan(""), std::nan("")});
    const double order = std::log(0.4 / 0.1) / std::log(2.0);
    CHECK(order == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("convergence study on the three-component system") {
    const auto coeffs = preset_system("kdv-mkdv-3").coefficients;
    StepperConfig cfg;
    cfg.auto_tau = false;
    cfg.tau = 1e-4;
    cfg.a_max = 500.0;
    // quick smoke study at a short horizon; the acceptance suite runs the
    // full pinned configuration
    const auto table = convergence_study(coeffs, r_family(1.0, 0.5), -20.0, 20.0,
                                         {0.4, 0.2, 0.1}, cfg, 0.02);
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0].h == 0.4);
    CHECK(table.rows[2].h == 0.1);
    CHECK(std::isnan(table.rows[0].observed_order_l2));
    CHECK(table.rows[1].error_l2 < table.rows[0].error_l2);
    CHECK(table.rows[2].error_l2 < table.rows[1].error_l2);
    CHECK(table.ls_order_l2 > 1.0);
}

TEST_CASE("convergence study requires at least three levels") {
    const auto coeffs = preset_system("kdv-mkdv-3").coefficients;
    StepperConfig cfg;
    CHECK_THROWS_AS(convergence_study(coeffs, r_family(1.0, 0.5), -20.0, 20.0, {0.4, 0.2}, cfg, 0.01),
                    validation_error);
}

TEST_CASE("field error restricts to the interior") {
    FieldState a = make_state(1, 40), b = make_state(1, 40);
    a.values[0][0] = 100.0;   // boundary contamination ignored
    a.values[0][20] = 0.5;
    b.values[0][20] = 0.25;
    const auto rep = field_error(a, b, 0.1, 8);
    CHECK(rep.linf == doctest::Approx(0.25));
}

TEST_CASE("three-component residual with generic constants") {
    // the general pipeline solves the coupled system for any seed constants
    SolutionFamily fam;
    fam.kind = FamilyKind::three_component;
    fam.params.a = {1.0, 0.0};
    fam.params.c1 = {0.8, 0.0};
    fam.params.c2 = {0.3, 0.0};
    fam.params.d1 = {0.2, 0.0};
    fam.params.d2 = {0.6, 0.0};
    const auto coeffs = preset_system("kdv-mkdv-3").coefficients;
    std::vector<std::pair<double, double>> pts{{0.4, 0.1}, {-0.8, 0.15}, {1.3, 0.05}};
    CHECK(pde_residual(fam, coeffs, pts, 1e-3) < 1e-6);
}

TEST_CASE("percentage error of a coarse integrator run, frozen level") {
    // Oracle-computed: the h = 0.25, t_end = 0.1 configuration sits far from
    // the asymptotic range for this profile; its max percentage error is
    // ~29%, an order above the h = 0.1 level used by the order study.
    const auto coeffs = preset_system("kdv-mkdv-3").coefficients;
    const Grid grid = build_grid(-20.0, 20.0, 0.25);
    SolutionFamily fam;
    fam.kind = FamilyKind::r_family;
    fam.params = ClosedFormParams::from_ratio(1.0, 0.5);
    const FieldState init = sample_on_grid(fam, grid, 0.0);
    StepperConfig cfg;
    cfg.auto_tau = true;
    cfg.a_max = 95.0;
    const auto res = integrate(init, coeffs, grid, 0.1, cfg, {0.1});
    const double pct = percentage_error_max(res.snapshots.back(), sample_on_grid(fam, grid, 0.1));
    CHECK(pct > 20.0);
    CHECK(pct < 40.0);
}
