#include <cyllens/exponents.hpp>

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace cyllens;

TEST_CASE("exponent set from lambda reproduces the anchor values") {
    const ExponentSet e = exponent_set_from_lambda(1.5);
    CHECK(e.kappa == doctest::Approx(9.0 / 8.0).epsilon(1e-14));
    CHECK(e.kappa_star == doctest::Approx(9.0 / 5.0).epsilon(1e-14));
    CHECK(e.p == doctest::Approx(9.0 / 4.0).epsilon(1e-14));
    CHECK(e.q == doctest::Approx(3.0).epsilon(1e-14));

    const ExponentSet e2 = exponent_set_from_lambda(1.25);
    CHECK(e2.kappa == doctest::Approx(1.25).epsilon(1e-14));
    CHECK(e2.kappa_star == doctest::Approx(15.0 / 7.0).epsilon(1e-14));
    CHECK(e2.p == doctest::Approx(15.0 / 8.0).epsilon(1e-14));
    CHECK(e2.q == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(3.0 / e2.p + 2.0 / e2.q == doctest::Approx(2.0).epsilon(1e-14));

    // near the excluded endpoint lambda -> 2 the temporal exponent tends to 2
    const ExponentSet e3 = exponent_set_from_lambda(1.999);
    CHECK(e3.q == doctest::Approx(1.0 / (1.0 - 1.0 / 1.999)).epsilon(1e-13));
    CHECK(e3.q > 2.0);
}

TEST_CASE("lambda domain errors name the interval") {
    CHECK_THROWS_WITH_AS(exponent_set_from_lambda(2.0), doctest::Contains("(1,2)"),
                         std::domain_error);
    CHECK_THROWS_AS(exponent_set_from_lambda(1.0), std::domain_error);
    CHECK_THROWS_AS(exponent_set_from_lambda(0.5), std::domain_error);
}

TEST_CASE("exponent relations hold on a 1000-point lambda grid") {
    for (int i = 1; i <= 1000; ++i) {
        const double lambda = 1.0 + i / 1001.0;
        const ExponentSet e = exponent_set_from_lambda(lambda);
        CHECK(std::abs(3.0 / e.kappa + 2.0 / e.lambda - 4.0) <= 1e-12);
        CHECK(std::abs(1.0 / e.kappa_star - (1.0 / e.kappa - 1.0 / 3.0)) <= 1e-12);
        CHECK(std::abs(1.0 / e.p + 1.0 / e.kappa_star - 1.0) <= 1e-12);
        CHECK(std::abs(1.0 / e.q + 1.0 / e.lambda - 1.0) <= 1e-12);
        CHECK(std::abs(3.0 / e.p + 2.0 / e.q - 2.0) <= 1e-12);
        CHECK(e.p > 1.5);
        CHECK(e.p < 3.0);
        CHECK(e.q > 2.0);
        // any valid exponent set sits in region II
        CHECK(classify_region(e.pq()) == RegionTag::II);
        // the scaled-criterion power is exactly 1 on the 3/p + 2/q = 2 line
        CHECK(std::abs(criterion_exponent(e.pq()) - 1.0) <= 1e-12);
    }
}

TEST_CASE("region classification") {
    CHECK(classify_region(PQPair::finite(3.0, 3.0)) == RegionTag::II);
    CHECK(classify_region(PQPair(Exponent::finite(1.5), Exponent::infinite())) ==
          RegionTag::ExcludedEndpoint);
    CHECK(classify_region(PQPair::finite(3.0, 2.0)) == RegionTag::ExcludedEndpoint);
    CHECK(classify_region(PQPair::finite(5.0, 10.0)) == RegionTag::I);
    // border 3/p + 2/q = 1 counts as region II when q > 2
    CHECK(classify_region(PQPair(Exponent::finite(3.0), Exponent::infinite())) == RegionTag::II);
    CHECK(classify_region(PQPair::finite(6.0, 4.0)) == RegionTag::II);
    // the Prodi-Serrin corner (inf, 2) fails the q > 2 constraint
    CHECK(classify_region(PQPair(Exponent::infinite(), Exponent::finite(2.0))) ==
          RegionTag::Outside);
    CHECK(classify_region(PQPair::finite(1.0, 1.0)) == RegionTag::Outside);
}

TEST_CASE("criterion exponent values") {
    CHECK(criterion_exponent(PQPair::finite(2.25, 3.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(criterion_exponent(PQPair(Exponent::finite(3.0), Exponent::infinite())) ==
          doctest::Approx(0.0));
    CHECK(criterion_exponent(PQPair::finite(2.0, 4.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(criterion_exponent(PQPair::finite(1.0, 1.0)), std::domain_error);
    CHECK_THROWS_AS(criterion_exponent(PQPair::finite(3.0, 2.0)), std::domain_error);
}

TEST_CASE("region V membership") {
    CHECK(in_region_V(LMPair(4.5, 4.5)));
    CHECK_FALSE(in_region_V(LMPair(3.0, 100.0)));  // 3/l + 1/m just above 1
    CHECK_FALSE(in_region_V(LMPair(6.0, 4.0)));    // on the Prodi-Serrin line
}

TEST_CASE("singular dimension") {
    CHECK(singular_dimension(LMPair(4.5, 4.5)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(singular_dimension(LMPair(4.5, 4.4)) ==
          doctest::Approx(3.0 - 4.4 + 8.8 / 4.5).epsilon(1e-14));
    CHECK_THROWS_AS(singular_dimension(LMPair(6.0, 4.0)), std::domain_error);

    // both branch formulas agree at l = m
    for (int i = 0; i < 60; ++i) {
        const double m = 4.05 + 0.01 * i;
        const double up = 3.0 - m + 2.0 * m / m;
        const double dn = 2.0 - m + 3.0 * m / m;
        CHECK(std::abs(up - dn) <= 1e-12);
        if (in_region_V(LMPair(m, m))) {
            const double d = singular_dimension(LMPair(m, m));
            CHECK(d > 0.0);
            CHECK(d < 1.0);
        }
    }
}

TEST_CASE("interpolation exponents for the L^{l,m} assumption") {
    const Sec4Exponents a = interp_sec4_exponents(LMPair(5.0, 4.2));
    CHECK(a.l_greater_m);
    REQUIRE(a.k.has_value());
    CHECK(*a.k == doctest::Approx(4.52).epsilon(1e-13));
    CHECK(*a.k > 4.0);
    CHECK(*a.k < 5.0);
    CHECK(a.sigma == doctest::Approx(4.2 / 4.52).epsilon(1e-13));

    const Sec4Exponents b = interp_sec4_exponents(LMPair(4.5, 4.5));
    CHECK_FALSE(b.l_greater_m);
    CHECK(b.alpha == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
    CHECK(b.beta == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
    CHECK(b.sigma == doctest::Approx(4.5 * (4.0 - 4.5) / (4.0 * (4.5 - 10.0 / 3.0))).epsilon(1e-12));
    // displayed exponents sum to 1, so the normalized constant-field ratio is 1
    const double w2 = (6.0 - b.alpha) * (1.0 - b.sigma) / (2.0 * b.alpha);
    const double w3 = 2.0 * (1.0 - b.sigma) / b.beta;
    CHECK(b.sigma + w2 + w3 == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(interp_sec4_exponents(LMPair(4.0, 4.0)), std::domain_error);
    CHECK_THROWS_AS(interp_sec4_exponents(LMPair(10.0, 10.0)), std::domain_error);
}

TEST_CASE("L4 interpolation weights") {
    const L4Weights a = interp_L4_exponents(PQPair::finite(4.0, 8.0));
    CHECK(a.half == doctest::Approx(0.5));
    CHECK(a.one_over_q == doctest::Approx(1.0 / 8.0));
    CHECK(a.three_over_2p == doctest::Approx(3.0 / 8.0));
    CHECK_FALSE(a.endpoint_warning);

    const L4Weights b = interp_L4_exponents(PQPair::finite(6.0, 4.0));
    CHECK(b.one_over_q == doctest::Approx(0.25));
    CHECK(b.three_over_2p == doctest::Approx(0.25));

    const L4Weights c = interp_L4_exponents(PQPair(Exponent::finite(3.0), Exponent::infinite()));
    CHECK(c.endpoint_warning);
    CHECK(c.one_over_q == doctest::Approx(0.0));
    CHECK(c.three_over_2p == doctest::Approx(0.5));

    CHECK_THROWS_AS(interp_L4_exponents(PQPair::finite(4.0, 4.0)), std::domain_error);

    // weights reproduce the L^4 exponent balance on the Prodi-Serrin line
    for (double r : {3.5, 4.0, 5.0, 6.0, 9.0}) {
        const double s = 2.0 / (1.0 - 3.0 / r);
        const L4Weights w = interp_L4_exponents(PQPair::finite(r, s));
        const double sum = w.half + w.one_over_q + w.three_over_2p;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        const double spatial = w.half / r + w.one_over_q / 2.0 + w.three_over_2p / 6.0;
        const double temporal = w.half / s + w.three_over_2p / 2.0;
        CHECK(spatial == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(temporal == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("exponent type rejects bad values") {
    CHECK_THROWS_AS(Exponent::finite(0.5), std::domain_error);
    CHECK_THROWS_AS(LMPair(-1.0, 2.0), std::domain_error);
    CHECK(Exponent::infinite().inv() == 0.0);
    ExponentSet bad = exponent_set_from_lambda(1.5);
    bad.p = 2.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}
