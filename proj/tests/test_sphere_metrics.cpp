#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "qlm/errors.hpp"
#include "qlm/sphere_metrics.hpp"

using namespace qlm;

namespace {

AxisymMetricSpec sample_metric(double eps, double r_o = 1.0) {
    // w = 1 + eps (1 - x^2)
    auto w = cheb::Series::from_monomial(std::vector{1.0 + eps, 0.0, -eps});
    return AxisymMetricSpec::from_profile(r_o, w);
}

}  // namespace

TEST_CASE("gauss curvature of round spheres") {
    auto g1 = AxisymMetricSpec::round(1.0);
    auto g3 = AxisymMetricSpec::round(3.0);
    for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
        CHECK(g1.gauss_curvature(x) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(g3.gauss_curvature(x) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    }
}

TEST_CASE("gauss curvature of a perturbed profile: closed form and finite differences") {
    auto g = sample_metric(0.1);
    // P = (1-x^2)(1 + 0.1(1-x^2)) has -P''/2 = 1.2 - 0.6 x^2 exactly.
    CHECK(g.gauss_curvature(0.0) == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(g.gauss_curvature(0.5) == doctest::Approx(1.2 - 0.6 * 0.25).epsilon(1e-14));

    const double h = 1e-5;
    for (double x : {-0.6, -0.1, 0.2, 0.8}) {
        double p0 = g.P()(x - h), p1 = g.P()(x), p2 = g.P()(x + h);
        double fd = (p0 - 2.0 * p1 + p2) / (h * h);
        CHECK(g.gauss_curvature(x) == doctest::Approx(-fd / 2.0).epsilon(1e-5));
    }
}

TEST_CASE("surface data: area exact, Gauss-Bonnet residual small") {
    auto round2 = AxisymMetricSpec::round(2.0);
    auto d = surface_data(round2);
    CHECK(d.area == doctest::Approx(16.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(d.gauss_bonnet_residual < 1e-12);
    CHECK(d.k_min == doctest::Approx(0.25).epsilon(1e-13));

    auto g = sample_metric(0.1);
    auto ds = surface_data(g);
    CHECK(ds.area == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(ds.gauss_bonnet_residual < 1e-8);

    // doubling the quadrature grid must not make the residual worse
    auto ds2 = surface_data(g, 513);
    CHECK(ds2.gauss_bonnet_residual <= ds.gauss_bonnet_residual + 1e-14);
}

TEST_CASE("round detection") {
    CHECK(AxisymMetricSpec::round(1.0).is_round());
    CHECK_FALSE(sample_metric(0.1).is_round());
    // a sampled constant profile keeps transform noise at the 1e-16 level;
    // it is not flagged round, but its curvature stays flat to rounding
    std::vector<double> ones(33, 1.0);
    auto g = AxisymMetricSpec::from_profile(1.0, cheb::Series::from_samples(ones));
    for (double x : {-0.8, 0.0, 0.6})
        CHECK(g.gauss_curvature(x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("curvature extrema are refined between quadrature nodes") {
    // K(x) = 1.2 - 0.6 x^2 + cubic tilt has an interior max away from any node
    auto w = cheb::Series::from_monomial(std::vector{1.1, 0.03, -0.1, -0.03});
    auto g = AxisymMetricSpec::from_profile(1.0, w);
    auto d = surface_data(g, 33);  // coarse grid to make node gaps visible
    auto dense = surface_data(g, 2049);
    CHECK(d.k_max == doctest::Approx(dense.k_max).epsilon(1e-10));
    CHECK(d.k_min == doctest::Approx(dense.k_min).epsilon(1e-10));
}

TEST_CASE("pole regularity is a hard gate") {
    auto bad = cheb::Series::from_monomial(std::vector{1.05, 0.0, -0.02});  // w(1) != 1
    CHECK_THROWS_AS(AxisymMetricSpec::from_profile(1.0, bad), std::invalid_argument);
}

TEST_CASE("hawking mass specializations") {
    auto g = AxisymMetricSpec::round(1.0);
    CHECK(hawking_mass(g, MeanCurvatureSpec::of(2.0)) == doctest::Approx(0.0).scale(1.0));

    // Schwarzschild coordinate sphere r = 4, M = 1: tau^2 = 1 - 2M/r = 1/2
    auto g4 = AxisymMetricSpec::round(4.0);
    double H_o = 2.0 / 4.0 * std::sqrt(0.5);
    CHECK(hawking_mass(g4, MeanCurvatureSpec::of(H_o)) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(MeanCurvatureSpec::of(0.0), std::invalid_argument);
    CHECK_THROWS_AS(MeanCurvatureSpec::of(-1.0), std::invalid_argument);
}

TEST_CASE("hawking mass scaling: r_o -> c r_o, H_o -> H_o / c") {
    auto H = MeanCurvatureSpec::of(1.3);
    auto g = AxisymMetricSpec::round(1.0);
    double m1 = hawking_mass(g, H);
    for (double c : {2.0, 5.0, 0.25}) {
        auto gc = AxisymMetricSpec::round(c);
        auto Hc = MeanCurvatureSpec::of(1.3 / c);
        CHECK(hawking_mass(gc, Hc) == doctest::Approx(c * m1).epsilon(1e-15));
    }
}

TEST_CASE("hyperbolic hawking mass: AdS-Schwarzschild spheres return m") {
    // H_o^2 = (4/r_o^2)(1 - 2m/r_o + kappa^2 r_o^2)
    for (double m : {-2.0, -0.5, 0.3, 1.0}) {
        for (double kappa : {0.3, 1.0}) {
            double r_o = 2.0;
            double rad = 1.0 - 2.0 * m / r_o + kappa * kappa * r_o * r_o;
            REQUIRE(rad > 0.0);
            auto g = AxisymMetricSpec::round(r_o);
            auto H = MeanCurvatureSpec::of(2.0 / r_o * std::sqrt(rad));
            CHECK(hyperbolic_hawking_mass(g, H, kappa) == doctest::Approx(m).epsilon(1e-13));
        }
    }
    auto g = AxisymMetricSpec::round(1.0);
    CHECK_THROWS_AS(hyperbolic_hawking_mass(g, MeanCurvatureSpec::of(1.0), 0.0),
                    std::invalid_argument);
    // kappa -> 0 continuity
    auto H = MeanCurvatureSpec::of(1.1);
    CHECK(hyperbolic_hawking_mass(g, H, 1e-9) ==
          doctest::Approx(hawking_mass(g, H)).epsilon(1e-15));
    // direct substitution: r_o = 1, tau = 1, kappa = 1
    CHECK(hyperbolic_hawking_mass(g, MeanCurvatureSpec::of(2.0), 1.0) ==
          doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("embedding: unit round sphere gives rho = sqrt(1-x^2), z = x") {
    auto prof = embed_revolution(AxisymMetricSpec::round(1.0));
    for (double x : {-0.9, -0.5, 0.0, 0.3, 0.8}) {
        CHECK(prof.rho(x) == doctest::Approx(std::sqrt(1.0 - x * x)).epsilon(1e-12));
        CHECK(prof.z(x) == doctest::Approx(x).epsilon(1e-12));
        CHECK(prof.mean_curvature(x) == doctest::Approx(2.0).epsilon(1e-11));
    }
}

TEST_CASE("embedding round trip: induced metric matches the input") {
    auto prof = embed_revolution(sample_metric(0.05));
    CHECK(prof.induced_metric_residual() < 1e-8);
}

TEST_CASE("embedding requires positive curvature") {
    // strong oblate perturbation makes K change sign
    auto g = sample_metric(1.2);
    auto d = surface_data(g);
    REQUIRE(d.k_min < 0.0);
    CHECK_THROWS_AS(embed_revolution(g), EmbeddingError);
}

TEST_CASE("brown-york decomposition on round spheres") {
    auto g = AxisymMetricSpec::round(1.0);
    // tau = 1: H_E = H_o = 2, everything vanishes
    auto rep1 = brown_york_mass(g, MeanCurvatureSpec::of(2.0));
    CHECK(std::fabs(rep1.m_by) < 1e-12);
    CHECK(std::fabs(rep1.middle_term) < 1e-12);
    CHECK(rep1.identity_residual < 1e-12);

    // tau = 1/2: m_BY = 1/2, decomposition (3/8, 0, 1/8)
    auto rep2 = brown_york_mass(g, MeanCurvatureSpec::of(1.0));
    CHECK(rep2.m_by == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep2.m_h == doctest::Approx(3.0 / 8.0).epsilon(1e-14));
    CHECK(std::fabs(rep2.middle_term) < 1e-12);
    CHECK(rep2.last_term == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("brown-york identity on a perturbed metric") {
    auto g = sample_metric(0.05);
    auto rep = brown_york_mass(g, MeanCurvatureSpec::of(1.8));  // tau = 0.9
    CHECK(rep.identity_residual < 1e-9);
    CHECK(rep.middle_term >= -1e-10);
}
