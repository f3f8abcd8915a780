#include "qlm/mass_bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace qlm {

FlatBounds flat_mass_bounds(const AxisymMetricSpec& g, const MeanCurvatureSpec& H,
                            const ZetaEstimate& zeta,
                            const std::optional<HorizonSpec>& horizon) {
    if (zeta.kind != Pipeline::Flat)
        throw std::invalid_argument("flat_mass_bounds: zeta estimate is not from the flat pipeline");

    const double r_o = g.r_o();
    const double tau = H.tau(r_o);
    ThetaResult th = theta_root(tau, zeta.value);
    const double th2 = th.theta * th.theta;

    FlatBounds b;
    b.tau = tau;
    b.zeta = zeta.value;
    b.theta = th.theta;
    b.m_H = hawking_mass(g, H);

    b.bartnik_bound = 0.5 * r_o * (th2 - tau * tau);
    double tz = tau * zeta.value;
    b.bartnik_bound_weak = 1.5 * r_o * (1.0 + 0.75 * tz) * tz + b.m_H;
    if (b.m_H != 0.0)
        b.bartnik_bound_ratio = (th2 - tau * tau) / (1.0 - tau * tau) * b.m_H;
    else
        b.bartnik_bound_ratio = 0.5 * r_o * (th2 - 1.0);

    b.holds_tau_le_theta = (tau <= th.theta);
    b.margin_tau = th.theta - tau;

    if (horizon) {
        double lhs = tau * tau + horizon->r_h / r_o;
        b.holds_horizon = (lhs <= th2);
        b.margin_horizon = th2 - lhs;
        b.hawking_lower = 0.5 * r_o * (1.0 + horizon->r_h / r_o - th2);
    } else {
        b.holds_horizon = std::nullopt;
        b.margin_horizon = std::nullopt;
        b.hawking_lower = 0.5 * r_o * (1.0 - th2);
    }
    return b;
}

HorizonPositivity positivity_from_horizon(double zeta, double r_h, double r_o) {
    if (!(r_h > 0.0) || !(r_o > 0.0))
        throw std::invalid_argument("positivity_from_horizon: r_h, r_o must be positive");
    if (r_h > r_o)
        throw std::invalid_argument("positivity_from_horizon: requires r_h <= r_o");
    HorizonPositivity v;
    v.zeta = zeta;
    v.threshold = std::sqrt(2.0) / 3.0 * (r_h / r_o);
    v.positive = zeta < v.threshold;
    return v;
}

BartnikPositivity positivity_from_bartnik_bound(double zeta, double bartnik_bound, double r_o) {
    if (!(bartnik_bound > 0.0))
        throw std::invalid_argument("positivity_from_bartnik_bound: bound input must be positive");
    BartnikPositivity v;
    v.lambda = 2.0 * bartnik_bound / r_o;
    double mn = std::min(v.lambda, 1.0);
    v.strict_threshold = std::sqrt(2.0) / 3.0 / (1.0 + v.lambda) * mn;
    v.relaxed_threshold = std::sqrt(2.0) / 3.0 / std::sqrt(1.0 + v.lambda) * mn;
    v.strict_positive = zeta < v.strict_threshold;
    v.relaxed_positive = zeta < v.relaxed_threshold;
    return v;
}

HyperbolicBounds hyperbolic_mass_bounds(const AxisymMetricSpec& g, const MeanCurvatureSpec& H,
                                  double kappa, const XiResult& xi,
                                  const std::optional<HorizonSpec>& horizon) {
    if (!(kappa > 0.0))
        throw std::invalid_argument("hyperbolic_mass_bounds: kappa must be positive");

    const double r_o = g.r_o();
    const double tau = H.tau(r_o);
    const double kr2 = kappa * kappa * r_o * r_o;

    HyperbolicBounds b;
    b.tau = tau;
    b.kappa = kappa;
    b.xi = xi.xi;
    b.theta_kappa = xi.theta_kappa;
    b.m_H_hyp = hyperbolic_hawking_mass(g, H, kappa);

    double tx = tau * xi.xi;
    double base = 1.0 + 1.5 * tx;
    b.excess_exact =
        0.5 * r_o * (kr2 * base * base + std::pow(base, 2.0 / 3.0) - kr2 - 1.0);
    b.excess_weak = 0.5 * r_o * (3.0 * kr2 + 1.0) * (1.0 + 0.75 * tx) * tx;
    b.bound_exact = b.m_H_hyp + b.excess_exact;
    b.bound_weak = b.m_H_hyp + b.excess_weak;

    b.end_inequality_lhs = b.bound_exact;
    if (horizon)
        b.penrose_test_margin = b.bound_exact - 0.5 * horizon->r_h;
    return b;
}

std::optional<double> small_tau_comparison(double alpha, double beta, double tau, double m_H) {
    double denom = beta - (1.0 + alpha) * tau * tau;
    if (!(denom > 0.0)) return std::nullopt;
    return std::sqrt(alpha / denom) * tau * m_H + m_H;
}

}  // namespace qlm
