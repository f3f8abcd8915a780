#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qlm/mass_bounds.hpp"

using namespace qlm;

namespace {

AxisymMetricSpec sample_metric(double eps = 0.1, double r_o = 1.0) {
    auto w = cheb::Series::from_monomial(std::vector{1.0 + eps, 0.0, -eps});
    return AxisymMetricSpec::from_profile(r_o, w);
}

}  // namespace

TEST_CASE("round metric: bound collapses to the Hawking mass exactly") {
    for (double tau : {0.1, 0.5, 0.9}) {
        auto g = AxisymMetricSpec::round(1.0);
        auto H = MeanCurvatureSpec::of(2.0 * tau);
        auto z = zeta_upper_bound(g);
        auto b = flat_mass_bounds(g, H, z);
        CHECK(b.theta == 1.0);
        CHECK(b.bartnik_bound == b.m_H);
        CHECK(b.holds_tau_le_theta);
        CHECK(b.hawking_lower == doctest::Approx(0.0).scale(1.0));
    }
}

TEST_CASE("Schwarzschild saturation of the horizon inequality") {
    auto g = AxisymMetricSpec::round(4.0);
    auto H = MeanCurvatureSpec::of(0.5 * std::sqrt(0.5));  // tau^2 = 1/2
    auto z = zeta_upper_bound(g);
    auto b = flat_mass_bounds(g, H, z, HorizonSpec::of(2.0));
    REQUIRE(b.holds_horizon.has_value());
    CHECK(*b.holds_horizon);
    REQUIRE(b.margin_horizon.has_value());
    CHECK(std::fabs(*b.margin_horizon) < 1e-14);
    // the lower bound (1.6) becomes m_H >= r_h/2 = M, saturated
    CHECK(b.hawking_lower == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("flat bound with a nontrivial zeta") {
    // tau = 0.9, tau zeta = 2/3: theta is the supergolden ratio
    auto g = sample_metric(0.1);
    auto H = MeanCurvatureSpec::of(1.8);
    ZetaEstimate z;
    z.value = 2.0 / (3.0 * 0.9);
    auto b = flat_mass_bounds(g, H, z);
    double th = 1.4655712318767680;
    CHECK(b.theta == doctest::Approx(th).epsilon(1e-12));
    CHECK(b.bartnik_bound == doctest::Approx(0.5 * (th * th - 0.81)).epsilon(1e-12));
    // excess over m_H is (r_o/2)(theta^2 - 1) >= 0
    CHECK(b.bartnik_bound - b.m_H == doctest::Approx(0.5 * (th * th - 1.0)).epsilon(1e-12));
    CHECK(b.bartnik_bound > b.m_H);  // strict whenever the zeta estimate is nonzero
    CHECK(b.bartnik_bound <= b.bartnik_bound_weak + 1e-14);
    CHECK(b.bartnik_bound_ratio == doctest::Approx(b.bartnik_bound).epsilon(1e-12));
}

TEST_CASE("horizon positivity: thresholds and gates") {
    auto v0 = positivity_from_horizon(0.0, 0.5, 1.0);
    CHECK(v0.positive);
    auto v = positivity_from_horizon(0.4, 0.5, 1.0);
    CHECK(v.threshold == doctest::Approx(std::sqrt(2.0) / 3.0 * 0.5).epsilon(1e-15));
    CHECK_FALSE(v.positive);
    CHECK_THROWS_AS(positivity_from_horizon(0.1, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("horizon positivity plus the horizon inequality force tau < 1") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> Uz(1e-4, 0.4), Ul(0.05, 1.0);
    int checked = 0;
    for (int i = 0; i < 3000; ++i) {
        double lambda = Ul(rng);
        double zeta = Uz(rng);
        if (!(zeta < std::sqrt(2.0) / 3.0 * lambda)) continue;
        double b = 1.5 * zeta;
        REQUIRE(phi_criterion(b, lambda));
        // the criterion gives Phi(tau) > 0 for all tau >= 1, so the horizon
        // inequality (Phi(tau) <= 0) can only hold with tau < 1
        for (double tau = 1.0; tau <= 30.0; tau *= 1.4)
            CHECK(phi(tau, b, lambda) > 0.0);
        ++checked;
    }
    CHECK(checked > 500);
}

TEST_CASE("bartnik positivity: strict vs relaxed thresholds") {
    auto v = positivity_from_bartnik_bound(0.0 + 1e-18, 0.5, 1.0);  // lambda = 1
    CHECK(v.strict_threshold == doctest::Approx(std::sqrt(2.0) / 6.0).epsilon(1e-15));
    CHECK(v.relaxed_threshold == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(v.strict_positive);
    CHECK(v.relaxed_positive);

    std::mt19937 rng(13);
    std::uniform_real_distribution<double> Uz(0.0, 0.5), Ub(0.01, 3.0);
    for (int i = 0; i < 1000; ++i) {
        auto r = positivity_from_bartnik_bound(Uz(rng), Ub(rng), 1.0);
        CHECK(r.strict_threshold <= r.relaxed_threshold + 1e-16);
        if (r.strict_positive) CHECK(r.relaxed_positive);
    }
    CHECK_THROWS_AS(positivity_from_bartnik_bound(0.1, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("monotonicity: decreasing zeta never flips a positive verdict") {
    for (double zeta = 0.4; zeta >= 1e-6; zeta *= 0.5) {
        auto v = positivity_from_horizon(zeta, 0.9, 1.0);
        auto v2 = positivity_from_horizon(zeta * 0.5, 0.9, 1.0);
        if (v.positive) CHECK(v2.positive);
    }
}

TEST_CASE("hyperbolic bounds: round gives xi = 0, bound reduces to m_H_hyp") {
    auto g = AxisymMetricSpec::round(1.0);
    auto H = MeanCurvatureSpec::of(1.0);
    XiResult xi{0.0, 0.0, XiBranch::BetaPositivePsiRoot, 0.0};
    auto b = hyperbolic_mass_bounds(g, H, 0.7, xi);
    CHECK(b.excess_exact == doctest::Approx(0.0).scale(1.0));
    CHECK(b.bound_exact == doctest::Approx(b.m_H_hyp).epsilon(1e-15));
}

TEST_CASE("hyperbolic bounds: exact below weak, kappa -> 0 degeneration") {
    auto g = sample_metric(0.1);
    auto H = MeanCurvatureSpec::of(1.0);  // tau = 0.5
    TraceFreePath path(g);
    auto consts = path_constants(path);

    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> Uk(0.05, 2.0);
    for (int i = 0; i < 200; ++i) {
        double kappa = Uk(rng);
        auto xi = xi_root(consts.alpha, consts.beta, 0.5, kappa, 1.0);
        auto b = hyperbolic_mass_bounds(g, H, kappa, xi);
        CHECK(b.excess_exact <= b.excess_weak * (1.0 + 1e-12) + 1e-15);
        CHECK(b.end_inequality_lhs >= 0.0);
    }

    // kappa -> 0: excess tends to the flat excess (r_o/2)(theta^2 - 1)
    auto z = zeta_upper_bound(g);
    auto flat = flat_mass_bounds(g, H, z);
    double flat_excess = flat.bartnik_bound - flat.m_H;
    double kappa = 1e-4;
    auto xi = xi_root(consts.alpha, consts.beta, 0.5, kappa, 1.0);
    auto b = hyperbolic_mass_bounds(g, H, kappa, xi);
    CHECK(b.excess_exact == doctest::Approx(flat_excess).epsilon(1e-4));
}

TEST_CASE("hyperbolic Penrose test margin with a horizon") {
    auto g = sample_metric(0.1);
    auto H = MeanCurvatureSpec::of(1.0);
    TraceFreePath path(g);
    auto consts = path_constants(path);
    auto xi = xi_root(consts.alpha, consts.beta, 0.5, 0.5, 1.0);
    auto b = hyperbolic_mass_bounds(g, H, 0.5, xi, HorizonSpec::of(0.4));
    REQUIRE(b.penrose_test_margin.has_value());
    CHECK(*b.penrose_test_margin ==
          doctest::Approx(b.bound_exact - 0.2).epsilon(1e-14));
}

TEST_CASE("small-tau comparison bound: domain and behaviour") {
    CHECK(small_tau_comparison(0.01, 0.5, 1.0, 0.3) == std::nullopt);  // tau^2 >= beta/(1+alpha)

    // tau = 0: both bounds equal m_H
    auto v0 = small_tau_comparison(0.01, 0.5, 0.0, 0.3);
    REQUIRE(v0.has_value());
    CHECK(*v0 == doctest::Approx(0.3).epsilon(1e-15));

    // small tau: the cubic-based excess (~ sqrt(alpha/2beta) tau) is smaller
    // than the comparison bound's excess (~ sqrt(alpha/beta) tau)
    double alpha = 0.02, beta = 0.6, tau = 1e-3, r_o = 1.0;
    double m_H = 0.5 * r_o * (1.0 - tau * tau);
    auto v = small_tau_comparison(alpha, beta, tau, m_H);
    REQUIRE(v.has_value());
    auto th = theta_root(tau, std::sqrt(alpha / (2.0 * beta)));
    double bound13 = 0.5 * r_o * (th.theta * th.theta - tau * tau);
    CHECK(bound13 < *v);
}
