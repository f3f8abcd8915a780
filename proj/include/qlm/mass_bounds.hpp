#pragma once

#include <optional>

#include "qlm/metric_paths.hpp"
#include "qlm/roots.hpp"
#include "qlm/sphere_metrics.hpp"

namespace qlm {

/// Bounds and verdicts for a CMC sphere bounding a region of nonnegative
/// scalar curvature. All zeta inputs are certified upper bounds; since every
/// quantity here is monotone in zeta, upper bounds keep the Bartnik bounds
/// valid and positive verdicts rigorous.
struct FlatBounds {
    double tau;
    double zeta;  // upper bound used
    double theta;
    double m_H;

    double bartnik_bound;       // (r_o/2)(theta^2 - tau^2)
    double bartnik_bound_weak;  // (3/2) r_o (1 + (3/4) tau zeta) tau zeta + m_H
    double bartnik_bound_ratio; // (theta^2-tau^2)/(1-tau^2) m_H, or (r_o/2)(theta^2-1) at m_H=0

    bool holds_tau_le_theta;
    double margin_tau;          // theta - tau
    std::optional<bool> holds_horizon;  // tau^2 + r_h/r_o <= theta^2
    std::optional<double> margin_horizon;

    double hawking_lower;  // (r_o/2)(1 - theta^2), or horizon-adjusted
};

FlatBounds flat_mass_bounds(const AxisymMetricSpec& g, const MeanCurvatureSpec& H,
                            const ZetaEstimate& zeta,
                            const std::optional<HorizonSpec>& horizon = {});

/// Positivity of the Hawking mass from an interior horizon:
/// zeta < (sqrt(2)/3) r_h / r_o. Requires r_h <= r_o.
struct HorizonPositivity {
    bool positive;
    double zeta;
    double threshold;
};

HorizonPositivity positivity_from_horizon(double zeta, double r_h, double r_o);

/// Positivity from a positive Bartnik bound, lambda = 2 m_B / r_o. Two
/// thresholds exist for this criterion; the stricter (1+lambda)^{-1} form is
/// the default verdict and the relaxed (1+lambda)^{-1/2} variant is reported
/// alongside.
struct BartnikPositivity {
    double lambda;
    double strict_threshold;
    double relaxed_threshold;
    bool strict_positive;
    bool relaxed_positive;
};

BartnikPositivity positivity_from_bartnik_bound(double zeta, double bartnik_bound, double r_o);

/// Hyperbolic Bartnik mass bounds (negative scalar curvature floor -6 kappa^2).
struct HyperbolicBounds {
    double tau;
    double kappa;
    double xi;
    std::optional<double> theta_kappa;
    double m_H_hyp;

    double excess_exact;  // (r_o/2)[kr^2 (1+3/2 tau xi)^2 + (1+3/2 tau xi)^{2/3} - kr^2 - 1]
    double excess_weak;   // (r_o/2)(3 kr^2 + 1)(1 + 3/4 tau xi) tau xi
    double bound_exact;   // m_H_hyp + excess_exact
    double bound_weak;    // m_H_hyp + excess_weak

    double end_inequality_lhs;  // m_H_hyp + excess_exact, reported >= 0 check
    std::optional<double> penrose_test_margin;  // lhs - r_h/2, horizon of mean curvature 2 kappa
};

HyperbolicBounds hyperbolic_mass_bounds(const AxisymMetricSpec& g, const MeanCurvatureSpec& H,
                                  double kappa, const XiResult& xi,
                                  const std::optional<HorizonSpec>& horizon = {});

/// Earlier small-tau comparison bound, defined only when tau^2 < beta/(1+alpha):
/// [alpha/(beta - (1+alpha) tau^2)]^{1/2} tau m_H + m_H.
std::optional<double> small_tau_comparison(double alpha, double beta, double tau, double m_H);

}  // namespace qlm
