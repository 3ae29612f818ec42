#include <cyllens/errors.hpp>
#include <cyllens/field.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cyllens;

namespace {

GridSpec half_grid(int n, int nt) {
    GridSpec g;
    g.origin = Eigen::Vector3d::Zero();
    g.h = 1.0 / (n - 1);
    g.nx = g.ny = g.nz = n;
    g.t0 = 0.0;
    g.dt = 0.5 / (nt - 1);
    g.nt = nt;
    g.half_space = true;
    return g;
}

} // namespace

TEST_CASE("zero field is exactly zero everywhere") {
    const auto f = generate_zero(half_grid(9, 5));
    CHECK(f.max_divergence() == 0.0);
    CHECK(f.max_boundary_trace() == 0.0);
    CHECK(f.u_vec(3, 4, 5, 2).norm() == 0.0);
    CHECK(f.has_analytic());
}

TEST_CASE("shear layer: exact boundary trace, exact discrete divergence") {
    const auto f = generate_shear_heat(half_grid(17, 9), 1.0, std::numbers::pi);
    CHECK(f.max_boundary_trace() == 0.0);
    // one-sided face stencils leave only rounding dust
    CHECK(f.max_divergence() <= f.div_tol());
}

TEST_CASE("shear layer satisfies the equations to second order") {
    const double a = std::numbers::pi, amp = 1.0;
    const GridSpec g = half_grid(25, 13);
    const auto f = generate_shear_heat(g, amp, a);

    // Taylor bounds: |dt^3 u| <= a^6 amp, |d^4 u| <= a^4 amp
    const double bound =
        amp * (std::pow(a, 6) * g.dt * g.dt / 6.0 + std::pow(a, 4) * g.h * g.h / 12.0) * 1.05;
    double worst = 0.0;
    for (int k = 4; k < g.nz - 4; k += 3)
        for (int n = 2; n < g.nt - 2; n += 2) {
            SpaceTimePoint z{{0.5, 0.5, g.x3(k)}, g.time(n)};
            worst = std::max(worst, nse_residual(f, z).norm());
        }
    CHECK(worst <= bound);
    CHECK(worst > 0.0);  // sanity: the residual probes something

    SpaceTimePoint outside{{0.5, 0.5, g.h}, g.time(2)};
    CHECK_THROWS_AS(nse_residual(f, outside), std::out_of_range);
}

TEST_CASE("homogeneous profile: degree -1 homogeneity and zero divergence") {
    const GridSpec g = make_centered_grid(24, 1.0 / 16.0, 0.0, 0.05, 4);
    const auto f = generate_homogeneous_profile(g, 2.0);

    const auto& u = f.analytic().velocity;
    for (double s : {2.0, 3.0, 0.5}) {
        const Eigen::Vector3d x(0.21, -0.13, 0.32);
        CHECK((s * u(s * x, 0.0) - u(x, 0.0)).norm() <= 1e-12 * u(x, 0.0).norm());
    }
    CHECK(f.max_divergence() <= f.div_tol());

    // grids with a node at the origin are rejected
    GridSpec bad = g;
    bad.origin = Eigen::Vector3d::Constant(-0.5);
    bad.h = 0.125;
    bad.nx = bad.ny = bad.nz = 9;
    CHECK_THROWS_AS(generate_homogeneous_profile(bad, 1.0), std::invalid_argument);

    // half-space grids are rejected outright
    CHECK_THROWS_AS(generate_homogeneous_profile(half_grid(9, 4), 1.0), std::invalid_argument);
}

TEST_CASE("random field: determinism, divergence bound, boundary taper") {
    const GridSpec g = half_grid(21, 7);
    const auto f1 = generate_divfree_random(g, 7, 6);
    const auto f2 = generate_divfree_random(g, 7, 6);
    for (int c = 0; c < 3; ++c) {
        REQUIRE(f1.component(c).size() == f2.component(c).size());
        CHECK(f1.component(c) == f2.component(c));  // bit identical
    }
    const auto f3 = generate_divfree_random(g, 8, 6);
    CHECK(f1.component(0) != f3.component(0));

    CHECK(f1.reported_div_constant() > 0.0);
    CHECK(f1.max_divergence() <= 10.0 * g.h * g.h * f1.reported_div_constant());
    CHECK(f1.max_boundary_trace() <= f1.boundary_tol());
    CHECK(f1.pressure_flagged_zero());
}

TEST_CASE("random field with solved pressure satisfies its Poisson relation") {
    GridSpec g = half_grid(15, 4);
    g.half_space = false;
    g.origin = Eigen::Vector3d::Constant(0.01);  // interior box
    const auto f = generate_divfree_random(g, 3, 4, PressureMode::Poisson);
    CHECK_FALSE(f.pressure_flagged_zero());
    CHECK_FALSE(f.component(3).empty());
    // rescaling cannot reproduce solved pressure samples
    CHECK_THROWS_AS(scale_field(f, 2.0), unsupported_operation);
}

TEST_CASE("scale_field: identity at s = 1, inverse composition, scaled shear solves") {
    const GridSpec g = half_grid(21, 9);
    const auto f = generate_shear_heat(g, 1.0, std::numbers::pi);

    const auto same = scale_field(f, 1.0);
    CHECK(same.component(0) == f.component(0));

    const auto twice = scale_field(f, 2.0);
    const auto back = scale_field(twice, 0.5);
    const auto& a0 = f.component(0);
    const auto& a1 = back.component(0);
    REQUIRE(a0.size() == a1.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a0.size(); ++i) worst = std::max(worst, std::abs(a0[i] - a1[i]));
    CHECK(worst <= 1e-10);

    // the scaled shear is again an exact solution: same Taylor bound with
    // scaled amplitude/wavenumber/steps
    const GridSpec gs = twice.grid();
    const double a_s = 2.0 * std::numbers::pi, amp_s = 2.0;
    const double bound =
        amp_s *
        (std::pow(a_s, 6) * gs.dt * gs.dt / 6.0 + std::pow(a_s, 4) * gs.h * gs.h / 12.0) * 1.05;
    SpaceTimePoint z{{0.25, 0.25, gs.x3(gs.nz / 2)}, gs.time(gs.nt / 2)};
    CHECK(nse_residual(twice, z).norm() <= bound);

    // zero field scales to zero
    const auto z0 = scale_field(generate_zero(g), 4.0);
    CHECK(z0.max_divergence() == 0.0);
}

TEST_CASE("homogeneous profile is pointwise fixed by the scaling") {
    const GridSpec g = make_centered_grid(24, 1.0 / 16.0, 0.0, 0.05, 4);
    const auto f = generate_homogeneous_profile(g, 1.5);
    const auto fs = scale_field(f, 2.0);
    // degree -1: s u(sx) = u(x), so the scaled samples at the pre-image nodes
    // equal the original analytic values there
    const GridSpec gs = fs.grid();
    const auto& u = f.analytic().velocity;
    double worst = 0.0;
    for (int k = 1; k < gs.nz; k += 5)
        for (int j = 1; j < gs.ny; j += 5)
            for (int i = 1; i < gs.nx; i += 5) {
                const Eigen::Vector3d x = gs.node_pos(i, j, k);
                worst = std::max(worst, (fs.u_vec(i, j, k, 0) - u(x, 0.0)).norm());
            }
    CHECK(worst <= 1e-12);
}

TEST_CASE("field without closure refuses to scale") {
    SpaceTimeField bare(half_grid(9, 4), "bare");
    CHECK_THROWS_AS(scale_field(bare, 2.0), unsupported_operation);
}
