#include <cyllens/errors.hpp>
#include <cyllens/functionals.hpp>

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cyllens;

namespace {

constexpr double kPi = std::numbers::pi;

GridSpec half_grid(int n, int nt, double trange = 0.3) {
    GridSpec g;
    g.origin = Eigen::Vector3d(-0.5, -0.5, 0.0);
    g.h = 1.0 / (n - 1);
    g.nx = g.ny = n;
    g.nz = (n + 1) / 2;
    g.t0 = 0.0;
    g.dt = trange / (nt - 1);
    g.nt = nt;
    g.half_space = true;
    return g;
}

const double kGHomogConst = 2.8791324052212953;  // (I_ang/(3-p))^{1/p}, p = 9/4

} // namespace

TEST_CASE("all functionals vanish on the zero field") {
    const GridSpec g = half_grid(25, 7);
    const auto f = generate_zero(g);
    const SpaceTimePoint z{{0.0, 0.0, 0.0}, 0.29};
    const QuadratureConfig cfg;
    const ExponentSet ex = exponent_set_from_lambda(1.5);

    const FunctionalReport rep = compute_report(f, z, 0.25, ex, cfg);
    CHECK(rep.a == 0.0);
    CHECK(rep.c == 0.0);
    CHECK(rep.e == 0.0);
    CHECK(rep.g == 0.0);
    CHECK(rep.d_tilde == 0.0);
    CHECK(rep.d1_tilde == 0.0);
    CHECK(rep.criterion == 0.0);
    CHECK(rep.clip == ClipMode::Half);
}

TEST_CASE("functionals vanish when the field is supported outside the cylinder") {
    GridSpec g = half_grid(33, 7);
    SpaceTimeField f(g, "far_bump");
    auto& u0 = f.mutable_component(0);
    auto& p = f.mutable_component(3);
    u0.assign(static_cast<std::size_t>(g.node_count()), 0.0);
    p.assign(static_cast<std::size_t>(g.node_count()), 0.0);
    for (int n = 0; n < g.nt; ++n)
        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    if (g.x1(i) > 0.35) {
                        u0[static_cast<std::size_t>(g.node_index(i, j, k, n))] = 1.0;
                        p[static_cast<std::size_t>(g.node_index(i, j, k, n))] = 1.0;
                    }
                }
    const SpaceTimePoint z{{-0.2, 0.0, 0.0}, 0.29};
    const QuadratureConfig cfg;
    const ExponentSet ex = exponent_set_from_lambda(1.5);
    const FunctionalReport rep = compute_report(f, z, 0.15, ex, cfg);
    CHECK(rep.a == 0.0);
    CHECK(rep.c == 0.0);
    CHECK(rep.e == 0.0);
    CHECK(rep.g == 0.0);
    CHECK(rep.criterion == 0.0);
    CHECK(rep.d1_tilde == 0.0);
}

TEST_CASE("A of a steady constant field matches the closed form") {
    GridSpec g = half_grid(41, 7);
    g.half_space = false;
    g.origin = Eigen::Vector3d::Constant(-0.5);
    g.nz = g.nx;
    SpaceTimeField f(g, "const");
    f.mutable_component(2).assign(static_cast<std::size_t>(g.node_count()), 1.3);
    const double r = 0.3;
    const double a = functional_a(f, {{0.0, 0.0, 0.0}, 0.29}, r, QuadratureConfig{});
    CHECK(a == doctest::Approx(1.3 * 1.3 * 4.0 * kPi * r * r * r / 3.0 / r).epsilon(0.01));
}

TEST_CASE("shear functionals at a boundary center match the dense oracle") {
    const GridSpec g = half_grid(41, 13);
    const auto f = generate_shear_heat(g, 1.0, kPi);
    const SpaceTimePoint z{{0.0, 0.0, 0.0}, 0.29};
    const double r = 0.35;
    const QuadratureConfig cfg;
    const ExponentSet ex = exponent_set_from_lambda(1.5);
    const FunctionalReport rep = compute_report(f, z, r, ex, cfg);

    const auto& uf = f.analytic().velocity;
    cyltest::DenseOracle oracle(g, 8);
    const auto speed2 = [&uf](const Eigen::Vector3d& x, double t) {
        return uf(x, t).squaredNorm();
    };
    const auto speed3 = [&uf](const Eigen::Vector3d& x, double t) {
        const double m = uf(x, t).norm();
        return m * m * m;
    };
    const auto grad2 = [](const Eigen::Vector3d& x, double t) {
        const double d = kPi * std::cos(kPi * x.z()) * std::exp(-kPi * kPi * t);
        return d * d;
    };

    // A uses the same slab-midpoint sup convention as the implementation
    double a_oracle = 0.0;
    CellQuadrature q(g, make_cylinder(g, z, r), cfg);
    for (int s = 0; s < q.slab_count(); ++s) {
        const double tm = 0.5 * (g.time(q.slab_level(s)) + g.time(q.slab_level(s) + 1));
        a_oracle = std::max(a_oracle, oracle.ball_integral(speed2, z.x, r, tm));
    }
    a_oracle /= r;
    CHECK(rep.a == doctest::Approx(a_oracle).epsilon(0.01));

    const double c_oracle = oracle.st_integral(speed3, z.x, r, z.t - r * r, z.t) / (r * r);
    CHECK(rep.c == doctest::Approx(c_oracle).epsilon(0.01));

    const double e_oracle = oracle.st_integral(grad2, z.x, r, z.t - r * r, z.t) / r;
    CHECK(rep.e == doctest::Approx(e_oracle).epsilon(0.015));

    const auto speed = [&uf](const Eigen::Vector3d& x, double t) { return uf(x, t).norm(); };
    const double g_oracle = oracle.lpq(speed, z.x, r, z.t - r * r, z.t, ex.p, ex.q) / r;
    CHECK(rep.g == doctest::Approx(g_oracle).epsilon(0.01));

    // criterion and G coincide on the 3/p + 2/q = 2 line
    CHECK(rep.criterion == doctest::Approx(rep.g).epsilon(1e-10));
}

TEST_CASE("scaled shear leaves every functional invariant") {
    const GridSpec g = half_grid(33, 9);
    const auto f = generate_shear_heat(g, 1.0, kPi);
    const SpaceTimePoint z{{0.0, 0.0, 0.0}, 0.29};
    const double r = 0.3;
    const QuadratureConfig cfg;
    const ExponentSet ex = exponent_set_from_lambda(1.5);
    const FunctionalReport rep = compute_report(f, z, r, ex, cfg);

    for (double s : {2.0, 4.0}) {
        const auto fs = scale_field(f, s);
        const SpaceTimePoint zs{z.x / s, z.t / (s * s)};
        const FunctionalReport reps = compute_report(fs, zs, r / s, ex, cfg);
        CHECK(reps.a == doctest::Approx(rep.a).epsilon(1e-10));
        CHECK(reps.c == doctest::Approx(rep.c).epsilon(1e-10));
        CHECK(reps.e == doctest::Approx(rep.e).epsilon(1e-10));
        CHECK(reps.g == doctest::Approx(rep.g).epsilon(1e-10));
        CHECK(reps.criterion == doctest::Approx(rep.criterion).epsilon(1e-10));
    }
}

TEST_CASE("homogeneous profile: G matches its closed form and doubles with amplitude") {
    const GridSpec g = make_centered_grid(48, 1.0 / 32.0, 0.0, 0.05, 5);
    const auto f = generate_homogeneous_profile(g, 1.0);
    const SpaceTimePoint z{{0.0, 0.0, 0.0}, 0.2};
    const QuadratureConfig cfg;
    const ExponentSet ex = exponent_set_from_lambda(1.5);

    // the singular core costs O((h/r)^{3/4}); at this resolution expect ~5%
    const double g1 = functional_g(f, z, 0.45, ex, cfg);
    CHECK(g1 == doctest::Approx(kGHomogConst).epsilon(0.08));

    const auto f2 = generate_homogeneous_profile(g, 2.0);
    const double g2 = functional_g(f2, z, 0.45, ex, cfg);
    CHECK(g2 == doctest::Approx(2.0 * g1).epsilon(1e-12));

    // exact discrete scale equivariance stands in for r-independence here;
    // the resolved per-radius comparison lives in the acceptance suite
    const auto fs = scale_field(f, 2.0);
    const SpaceTimePoint zs{z.x / 2.0, z.t / 4.0};
    const double gs = functional_g(fs, zs, 0.225, ex, cfg);
    CHECK(gs == doctest::Approx(g1).epsilon(1e-10));
}

TEST_CASE("pressure functionals: constants vanish, linear slope has closed form") {
    GridSpec g = half_grid(41, 7);
    g.half_space = false;
    g.origin = Eigen::Vector3d::Constant(-0.5);
    g.nz = g.nx;
    const SpaceTimePoint z{{0.0, 0.0, 0.0}, 0.29};
    const double r = 0.3;
    const QuadratureConfig cfg;
    const ExponentSet ex = exponent_set_from_lambda(1.5);

    {
        SpaceTimeField f(g, "constp");
        f.mutable_component(3).assign(static_cast<std::size_t>(g.node_count()), 7.5);
        CHECK(functional_d_tilde(f, z, r, ex, cfg) <= 1e-12);
        CHECK(functional_d1_tilde(f, z, r, ex, cfg) <= 1e-10);
        CHECK(functional_d(f, z, r, cfg) <= 1e-15);
        CHECK(functional_d1(f, z, r, cfg) <= 1e-12);
    }
    {
        SpaceTimeField f(g, "linp");
        auto& p = f.mutable_component(3);
        p.resize(static_cast<std::size_t>(g.node_count()));
        for (int n = 0; n < g.nt; ++n)
            for (int k = 0; k < g.nz; ++k)
                for (int j = 0; j < g.ny; ++j)
                    for (int i = 0; i < g.nx; ++i)
                        p[static_cast<std::size_t>(g.node_index(i, j, k, n))] = g.x1(i);
        // |grad p| = 1: D1~ = (1/r) vol^{1/kappa} (r^2)^{1/lambda}
        const double vol = 4.0 * kPi * r * r * r / 3.0;
        const double want =
            std::pow(vol, 1.0 / ex.kappa) * std::pow(r * r, 1.0 / ex.lambda) / r;
        CHECK(functional_d1_tilde(f, z, r, ex, cfg) == doctest::Approx(want).epsilon(0.01));

        // the special-case functional: D1 = D1~^{3/2} at kappa = 9/8, lambda = 3/2
        const double d1t = functional_d1_tilde(f, z, r, ex, cfg);
        const double d1 = functional_d1(f, z, r, cfg);
        CHECK(d1 == doctest::Approx(std::pow(d1t, 1.5)).epsilon(1e-10));
    }
}

TEST_CASE("shear criterion decays through dyadic radii at a boundary center") {
    const GridSpec g = half_grid(49, 13);
    const auto f = generate_shear_heat(g, 1.0, kPi);
    const SpaceTimePoint z{{0.0, 0.0, 0.0}, 0.29};
    const QuadratureConfig cfg;
    const PQPair pq = PQPair::finite(2.25, 3.0);

    const double c1 = criterion_quantity(f, z, 0.4, pq, cfg);
    const double c2 = criterion_quantity(f, z, 0.2, pq, cfg);
    const double c3 = criterion_quantity(f, z, 0.1, pq, cfg);
    CHECK(c2 < c1);
    CHECK(c3 < c2);
}

TEST_CASE("sweep validates radii and keeps order") {
    const GridSpec g = half_grid(49, 9);
    const auto f = generate_shear_heat(g, 1.0, kPi);
    const SpaceTimePoint z{{0.0, 0.0, 0.0}, 0.29};
    const QuadratureConfig cfg;
    const ExponentSet ex = exponent_set_from_lambda(1.5);

    const auto reports = sweep(f, z, {0.4, 0.2, 0.1}, ex, cfg);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].r == 0.4);
    CHECK(reports[2].r == 0.1);

    CHECK_THROWS_AS(sweep(f, z, {0.4, 0.2, 2.0 * g.h}, ex, cfg), resolution_error);
}

TEST_CASE("interior center with a floor-touching ball is clipped and flagged") {
    const GridSpec g = half_grid(33, 9);
    const auto f = generate_shear_heat(g, 1.0, kPi);
    const SpaceTimePoint z{{0.0, 0.0, 0.1}, 0.29};
    const ExponentSet ex = exponent_set_from_lambda(1.5);
    const FunctionalReport rep = compute_report(f, z, 0.2, ex, QuadratureConfig{});
    CHECK(rep.clip == ClipMode::Interior);
    CHECK(rep.domain_clipped);
}
