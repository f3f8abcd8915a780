#include "qlm/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include "qlm/collar.hpp"
#include "qlm/driver.hpp"
#include "qlm/mass_bounds.hpp"

namespace qlm {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

AxisymMetricSpec quadratic_sample(double eps, double r_o = 1.0) {
    auto w = cheb::Series::from_monomial(std::vector{1.0 + eps, 0.0, -eps});
    return AxisymMetricSpec::from_profile(r_o, w);
}

struct Check {
    bool pass = true;
    double worst = 0.0;
    void require(bool ok, double metric = 0.0) {
        pass = pass && ok;
        worst = std::max(worst, metric);
    }
};

// 1. Round metrics: zeta estimate 0, theta 1, Bartnik bound equals m_H.
CriterionResult criterion_round_identity() {
    Check c;
    for (double r_o : {1.0, 2.5}) {
        auto g = AxisymMetricSpec::round(r_o);
        for (double tau : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            auto H = MeanCurvatureSpec::of(2.0 * tau / r_o);
            auto z = zeta_upper_bound(g);
            auto b = flat_mass_bounds(g, H, z);
            double gap = std::fabs(b.bartnik_bound - b.m_H);
            c.require(z.value == 0.0);
            c.require(b.theta == 1.0);
            c.require(gap <= 1e-14 * r_o, gap);
        }
    }
    return {1, "round identity: zeta = 0, theta = 1, bound = m_H", c.pass,
            "worst |bound - m_H| = " + fmt(c.worst)};
}

// 2. Schwarzschild sphere r_o = 4, M = 1: tau^2 + r_h/r_o = 1 = theta^2.
CriterionResult criterion_schwarzschild_saturation() {
    auto g = AxisymMetricSpec::round(4.0);
    auto H = MeanCurvatureSpec::of(0.5 * std::sqrt(0.5));
    auto z = zeta_upper_bound(g);
    auto b = flat_mass_bounds(g, H, z, HorizonSpec::of(2.0));
    double margin = b.margin_horizon.value_or(1.0);
    bool pass = b.theta == 1.0 && std::fabs(margin) < 1e-14 && *b.holds_horizon;
    return {2, "Schwarzschild saturation of the horizon inequality", pass,
            "theta^2 - (tau^2 + r_h/r_o) = " + fmt(margin)};
}

// 3. AdS-Schwarzschild coordinate spheres return m.
CriterionResult criterion_ads_identity() {
    Check c;
    const double ms[10] = {-2.0, -1.0, -0.5, -0.1, 0.1, 0.3, 0.7, 1.0, 1.5, 2.0};
    const double kappas[10] = {0.3, 0.5, 1.0, 0.7, 0.3, 1.2, 0.5, 0.8, 1.0, 0.4};
    const double ros[10] = {1.0, 2.0, 1.5, 0.8, 1.2, 2.5, 3.0, 2.0, 2.0, 4.0};
    for (int i = 0; i < 10; ++i) {
        double rad = 1.0 - 2.0 * ms[i] / ros[i] + kappas[i] * kappas[i] * ros[i] * ros[i];
        auto g = AxisymMetricSpec::round(ros[i]);
        auto H = MeanCurvatureSpec::of(2.0 / ros[i] * std::sqrt(rad));
        double got = hyperbolic_hawking_mass(g, H, kappas[i]);
        c.require(std::fabs(got - ms[i]) < 1e-12, std::fabs(got - ms[i]));
    }
    return {3, "AdS-Schwarzschild hyperbolic Hawking mass identity", c.pass,
            "worst |m_H^H - m| = " + fmt(c.worst)};
}

// 4. Cubic suite: residual, bracket, sign equivalence.
CriterionResult criterion_cubic_suite() {
    Check c;
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> Ut(0.0, 10.0), Uz(0.0, 5.0), Ux(0.01, 20.0);
    for (int i = 0; i < 1000; ++i) {
        double tau = Ut(rng), zeta = Uz(rng);
        auto r = theta_root(tau, zeta);
        double scale = std::max(1.0, r.theta * r.theta * r.theta);
        c.require(std::fabs(r.residual) < 1e-12 * scale, std::fabs(r.residual) / scale);
        c.require(r.theta >= 1.0 && r.theta <= 1.0 + 1.5 * tau * zeta + 1e-12);
        double x = Ux(rng);
        if (std::fabs(x - r.theta) > 1e-9)
            c.require(theta_sign_equivalence(x, tau, zeta) == (x <= r.theta));
    }
    return {4, "cubic suite: residual, bracket, sign equivalence (1000 trials)", c.pass,
            "worst scaled residual = " + fmt(c.worst)};
}

// 5. Collar certificates at m = -100 on the default and doubled grids.
CriterionResult criterion_collar_certificate() {
    auto g = quadratic_sample(0.1);
    TraceFreePath path(g);
    auto consts = path_constants(path);
    auto H = MeanCurvatureSpec::of(1.6);  // tau = 0.8
    std::ostringstream detail;
    bool pass = true;

    auto flat = CollarMetric::assemble(path, consts, H, -100.0, Pipeline::Flat);
    auto c1 = flat.curvature_certificate(CollarGrid{101, 257});
    auto c2 = flat.curvature_certificate(CollarGrid{201, 513});
    pass = pass && c1.min_R >= -1e-10 && c2.min_R >= -1e-10;
    detail << "flat min R = " << fmt(c1.min_R) << " / " << fmt(c2.min_R);

    auto hyp = CollarMetric::assemble(path, consts, H, -100.0, Pipeline::Hyperbolic, 0.5);
    auto h1 = hyp.curvature_certificate(CollarGrid{101, 257});
    auto h2 = hyp.curvature_certificate(CollarGrid{201, 513});
    double floor = -6.0 * 0.25;
    pass = pass && h1.min_R >= floor - 1e-10 && h2.min_R >= floor - 1e-10;
    detail << "; hyperbolic min R = " << fmt(h1.min_R) << " / " << fmt(h2.min_R)
           << " (floor " << fmt(floor) << ")";
    return {5, "collar scalar-curvature certificate at A_o", pass, detail.str()};
}

// 6. Dual slice-mass computations agree for both pipelines.
CriterionResult criterion_slice_consistency() {
    auto g = quadratic_sample(0.1);
    TraceFreePath path(g);
    auto consts = path_constants(path);
    auto H = MeanCurvatureSpec::of(1.6);
    Check c;
    for (auto pipe : {Pipeline::Flat, Pipeline::Hyperbolic}) {
        double kappa = (pipe == Pipeline::Hyperbolic) ? 0.5 : 0.0;
        auto collar = CollarMetric::assemble(path, consts, H, -100.0, pipe, kappa);
        for (int i = 0; i <= 10; ++i) {
            auto rep = collar.slice_report(0.1 * i);
            c.require(rep.mass_consistency < 1e-9, rep.mass_consistency);
        }
    }
    return {6, "slice Hawking mass: formula vs direct computation", c.pass,
            "worst disagreement = " + fmt(c.worst)};
}

// 7. Flat limit study: monotone convergence to r_o theta^2 and the mass limit.
CriterionResult criterion_limit_study() {
    auto g = quadratic_sample(0.1);
    auto consts = path_constants(TraceFreePath(g));
    auto ms = default_m_sequence(2, 8);
    auto study = limit_study(consts, 0.8, 1.0, Pipeline::Flat, 0.0, ms);
    bool pass = true;
    for (std::size_t i = 1; i < study.rows.size(); ++i)
        pass = pass && study.rows[i].dev_u <= study.rows[i - 1].dev_u;
    pass = pass && study.rows.back().dev_u < 1e-4 && study.rows.back().dev_mass < 1e-4;
    return {7, "flat limit study: u -> r_o theta^2, mass -> (r_o/2)(theta^2 - tau^2)", pass,
            "dev_u(j=8) = " + fmt(study.rows.back().dev_u) +
                ", dev_mass(j=8) = " + fmt(study.rows.back().dev_mass)};
}

// 8. kappa -> 0 degeneration of the Psi root onto the flat cubic.
CriterionResult criterion_kappa_degeneration() {
    auto g = quadratic_sample(0.1);
    auto consts = path_constants(TraceFreePath(g));
    double tau = 0.5;
    auto th = theta_root(tau, std::sqrt(0.5 * consts.alpha / consts.beta));
    bool pass = true;
    double prev = 1.0, at_1e3 = 0.0;
    for (double kro : {1e-3, 1e-4, 1e-5}) {
        auto xi = xi_root(consts.alpha, consts.beta, tau, kro, 1.0);
        double rel =
            std::fabs(xi.xi * std::sqrt(2.0 * consts.beta / consts.alpha) /
                          (th.theta * th.theta) -
                      1.0);
        if (kro == 1e-3) {
            at_1e3 = rel;
            pass = pass && rel < 1e-4;
        }
        pass = pass && rel < prev;
        prev = rel;
    }
    return {8, "kappa -> 0: xi sqrt(2 beta/alpha) approaches theta^2", pass,
            "relative gap at kappa r_o = 1e-3: " + fmt(at_1e3)};
}

// 9. Phi battery: the criterion implies positivity on [1, 100].
CriterionResult criterion_phi_suite() {
    std::mt19937 rng(90210);
    std::uniform_real_distribution<double> Ub(1e-3, 1.5), Ul(1e-3, 1.5);
    int accepted = 0, violations = 0;
    while (accepted < 1000) {
        double b = Ub(rng), lambda = Ul(rng);
        if (!phi_criterion(b, lambda)) continue;
        ++accepted;
        for (int i = 0; i < 64; ++i) {
            double tau = std::pow(100.0, i / 63.0);
            if (!(phi(tau, b, lambda) > 0.0)) ++violations;
        }
    }
    return {9, "Phi criterion implies Phi(tau) > 0 on [1, 100] (1000 pairs)",
            violations == 0, std::to_string(violations) + " violations"};
}

// 10. Warp ODE cross-checks: flat round trip and hyperbolic sandwich bounds.
CriterionResult criterion_warp_cross_checks() {
    Check c;
    for (int j = -2; j <= 8; ++j) {
        double m = -std::pow(10.0, j);
        for (double target : {1.5, 2.0, 5.0}) {
            double s = flat_s_from_u(m, 1.0, target);
            auto sol = integrate_warp(WarpParams{m, 0.0, 1.0}, s);
            c.require(std::fabs(sol.u(s) - target) < 1e-9, std::fabs(sol.u(s) - target));
        }
    }
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> Um(-100.0, -0.1), Uk(0.05, 2.0), Ur(0.5, 3.0),
        Us(0.05, 1.0);
    int inside = 0;
    for (int i = 0; i < 100; ++i) {
        WarpParams p{Um(rng), Uk(rng), Ur(rng)};
        double s = Us(rng) * 3.0 / p.kappa;
        auto br = warp_upper_bounds_hyperbolic(p, s, 1.0);
        auto sol = integrate_warp(p, s);
        double u32 = std::pow(sol.u(s), 1.5);
        if (u32 >= br.lower_u32 * (1.0 - 1e-11) && u32 <= br.upper_u32 * (1.0 + 1e-11))
            ++inside;
    }
    c.require(inside == 100);
    return {10, "warp ODE: flat round trip < 1e-9, hyperbolic sandwich (100 trials)",
            c.pass, "worst round-trip gap = " + fmt(c.worst) + ", sandwich hits = " +
                        std::to_string(inside) + "/100"};
}

// 11. Brown-York decomposition identity and the Minkowski sign.
CriterionResult criterion_brown_york() {
    Check c;
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> Uc(-0.08, 0.08), Ut(0.2, 1.1);
    int accepted = 0;
    while (accepted < 20) {
        double c0 = Uc(rng), c1 = Uc(rng), c2 = Uc(rng);
        // w = 1 + (1-x^2)(c0 + c1 x + c2 x^2) keeps the poles regular
        auto w = cheb::Series::from_monomial(
            std::vector{1.0 + c0, c1, c2 - c0, -c1, -c2});
        AxisymMetricSpec g = AxisymMetricSpec::from_profile(1.0, w);
        if (surface_data(g).k_min <= 0.01) continue;
        ++accepted;
        auto rep = brown_york_mass(g, MeanCurvatureSpec::of(2.0 * Ut(rng)));
        c.require(rep.identity_residual < 1e-8, rep.identity_residual);
        c.require(rep.middle_term >= -1e-10);
    }
    return {11, "Brown-York decomposition identity on 20 convex samples", c.pass,
            "worst identity residual = " + fmt(c.worst)};
}

// 12. Gauss-Bonnet residual at the default grid, improving under doubling.
CriterionResult criterion_gauss_bonnet() {
    Check c;
    std::vector<AxisymMetricSpec> samples;
    samples.push_back(AxisymMetricSpec::round(2.0));
    samples.push_back(quadratic_sample(0.1));
    samples.push_back(AxisymMetricSpec::from_profile(
        1.5, cheb::Series::from_monomial(std::vector{1.02, 0.0, 0.01, 0.0, -0.03})));
    // slowly-converging profile (poles near x = +-0.105i), stored at 513 nodes
    // so the default 257-node quadrature is genuinely inexact
    samples.push_back(AxisymMetricSpec::from_profile(
        1.0, cheb::Series::from_function(
                 [](double x) { return 1.0 + 0.4 * (1.0 - x * x) / (1.0 + 90.0 * x * x); },
                 513)));

    double runge_257 = 0.0, runge_513 = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double r257 = surface_data(samples[i], 257).gauss_bonnet_residual;
        double r513 = surface_data(samples[i], 513).gauss_bonnet_residual;
        c.require(r257 < 1e-8, r257);
        // doubling must improve the residual, or both sit at the rounding floor
        c.require(r513 <= r257 + 1e-14 || r513 < 1e-11);
        if (i == 3) {
            runge_257 = r257;
            runge_513 = r513;
        }
    }
    // for the hard sample the improvement must be genuine, not a floor effect
    c.require(runge_257 > 1e-13 && runge_513 < runge_257);
    return {12, "Gauss-Bonnet residual < 1e-8, improves under grid doubling", c.pass,
            "worst residual at 257 nodes = " + fmt(c.worst) + "; hard sample " +
                fmt(runge_257) + " -> " + fmt(runge_513)};
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
    return {
        criterion_round_identity(),   criterion_schwarzschild_saturation(),
        criterion_ads_identity(),     criterion_cubic_suite(),
        criterion_collar_certificate(), criterion_slice_consistency(),
        criterion_limit_study(),      criterion_kappa_degeneration(),
        criterion_phi_suite(),        criterion_warp_cross_checks(),
        criterion_brown_york(),       criterion_gauss_bonnet(),
    };
}

int run_selftest(std::ostream& out) {
    auto results = run_acceptance();
    int failures = 0;
    for (const auto& r : results) {
        out << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " — "
            << r.detail << "\n";
        if (!r.pass) ++failures;
    }
    out << (failures == 0 ? "ACCEPTANCE: all criteria passed\n"
                          : "ACCEPTANCE: " + std::to_string(failures) + " criteria FAILED\n");
    return failures;
}

}  // namespace qlm
