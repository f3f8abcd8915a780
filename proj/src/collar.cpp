#include "qlm/collar.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qlm/errors.hpp"
#include "qlm/numerics.hpp"
#include "qlm/roots.hpp"

namespace qlm {

double collar_k(double tau, double m, double r_o, double kappa) {
    double rad = 1.0 - 2.0 * m / r_o + kappa * kappa * r_o * r_o;
    if (!(rad > 0.0))
        throw std::invalid_argument("collar_k: 1 - 2m/r_o + kappa^2 r_o^2 must be positive");
    return tau / std::sqrt(rad);
}

// ---------------------------------------------------------------------------
// Warp amplitude selection
// ---------------------------------------------------------------------------

AChoice choose_A_flat(const PathConstants& c, const WarpParams& p, double k,
                      OdeTol ode) {
    if (!(c.alpha > 0.0))
        throw std::invalid_argument("choose_A_flat: alpha must be positive (nonround path)");
    if (!(c.beta > (1.0 + 0.5 * c.alpha) * k * k))
        throw AdmissibilityError("k2_exceeds_beta_margin",
                                 "choose_A_flat: beta <= (1 + alpha/2) k^2; m not negative enough");

    const double r_o = p.r_o;
    const double bk = c.beta - k * k;
    const double lower = r_o * std::sqrt(0.5 * c.alpha / bk);

    double A_o, u_at;
    if (p.m < 0.0) {
        // Solve u(s)/s = ratio via the exact profile; u/s falls strictly from
        // +inf to 1, so G(u) = u - ratio * s(u) has a single sign change.
        const double ratio = std::sqrt(2.0 * bk / c.alpha) / k;
        auto G = [&](double u) { return u - ratio * flat_s_from_u(p.m, r_o, u); };
        double hi = 2.0 * r_o;
        while (G(hi) > 0.0) {
            hi *= 2.0;
            if (hi > 1e12 * r_o) throw std::runtime_error("choose_A_flat: no sign change");
        }
        double u_root = num::solve_bracketed(G, r_o, hi, num::RootOpts{1e-14, 300});
        double s_star = flat_s_from_u(p.m, r_o, u_root);
        A_o = s_star / k;
        u_at = u_root;
    } else {
        // Moderate m in [0, m_o): scan upward from the proven lower bound for
        // the first sign change, which is the smallest root.
        auto h_of = [&](double A) {
            WarpSolution sol = integrate_warp(p, A * k, ode);
            double u = sol.u(A * k);
            return bk - 0.5 * c.alpha * (u / A) * (u / A);
        };
        double A_prev = lower * 0.999999;
        double h_prev = h_of(A_prev);
        double A_cur = A_prev;
        for (int i = 0; i < 400 && h_prev < 0.0; ++i) {
            A_cur = A_prev * 1.25;
            double h_cur = h_of(A_cur);
            if (h_cur >= 0.0) break;
            A_prev = A_cur;
            h_prev = h_cur;
        }
        A_o = num::solve_bracketed(h_of, A_prev, A_cur, num::RootOpts{1e-13, 300});
        WarpSolution sol = integrate_warp(p, A_o * k, ode);
        u_at = sol.u(A_o * k);
    }

    AChoice out;
    out.A_o = A_o;
    out.residual = c.beta - k * k - 0.5 * c.alpha * (u_at / A_o) * (u_at / A_o);
    out.lower_bound = lower;
    return out;
}

AChoice choose_A_hyperbolic(const PathConstants& c, const WarpParams& p, double k,
                            double kappa, OdeTol ode) {
    if (!(kappa > 0.0)) throw std::invalid_argument("choose_A_hyperbolic: kappa must be positive");
    if (!(c.alpha > 0.0))
        throw std::invalid_argument("choose_A_hyperbolic: alpha must be positive");

    const double r_o = p.r_o;
    const double kr2 = kappa * kappa * r_o * r_o;
    const double k2 = k * k;

    if (c.beta <= 0.0) {
        double denom = c.beta + 3.0 * kr2 - (1.0 + 3.0 * kr2) * k2;
        if (!(denom > 0.0))
            throw AdmissibilityError("k2_exceeds_hyperbolic_floor",
                                     "choose_A_hyperbolic: beta + 3 kappa^2 r_o^2 - "
                                     "(1 + 3 kappa^2 r_o^2) k^2 must be positive");
        AChoice out;
        out.A_o = r_o * std::sqrt(0.5 * c.alpha / denom);
        out.residual = 0.0;
        out.lower_bound =
            std::sqrt(c.alpha * r_o * r_o / (2.0 * (c.beta - k2) + 6.0 * kr2 * (1.0 - k2)));
        return out;
    }

    if (!(k2 < c.beta))
        throw AdmissibilityError("k2_exceeds_beta",
                                 "choose_A_hyperbolic: requires k^2 < beta");

    // A priori bracket for the unique root.
    double A_lo = std::sqrt(c.alpha * r_o * r_o /
                            (2.0 * (c.beta - k2) + 6.0 * kappa * kappa * (1.0 - k2) * r_o * r_o));
    double A_hi = std::sqrt(c.alpha / (6.0 * kappa * kappa * (1.0 - k2)));

    WarpSolution sol = integrate_warp(p, A_hi * k * (1.0 + 1e-9) + 1e-300, ode);
    auto F = [&](double A) {
        double u = sol.u(A * k);
        return (c.beta - k2) + (3.0 * kappa * kappa * (1.0 - k2) - 0.5 * c.alpha / (A * A)) * u * u;
    };
    auto dF = [&](double A) {
        double u = sol.u(A * k);
        double up = sol.du(A * k);
        return c.alpha / (A * A * A) * u * u +
               (3.0 * kappa * kappa * (1.0 - k2) - 0.5 * c.alpha / (A * A)) * 2.0 * u * up * k;
    };

    // Guard the proven bracket against rounding at its endpoints.
    double lo = A_lo, hi = A_hi;
    for (int i = 0; i < 8 && F(lo) > 0.0; ++i) lo *= 0.999;
    for (int i = 0; i < 8 && F(hi) < 0.0; ++i) hi *= 1.001;
    if (hi * k > sol.s_max()) sol = integrate_warp(p, hi * k * (1.0 + 1e-9), ode);

    double A_o = num::solve_bracketed(F, dF, lo, hi, num::RootOpts{1e-14, 300});

    AChoice out;
    out.A_o = A_o;
    out.residual = F(A_o);
    out.lower_bound = A_lo;
    out.upper_bound = A_hi;
    return out;
}

// ---------------------------------------------------------------------------
// Collar assembly
// ---------------------------------------------------------------------------

CollarMetric::CollarMetric(TraceFreePath path, PathConstants consts, WarpFunction warp,
                           double tau, double m, double k, double A, Pipeline pipe,
                           double kappa, AChoice choice)
    : path_(std::move(path)),
      consts_(consts),
      warp_(std::move(warp)),
      tau_(tau),
      m_(m),
      k_(k),
      A_(A),
      pipeline_(pipe),
      kappa_(kappa),
      choice_(choice) {}

CollarMetric CollarMetric::assemble(TraceFreePath path, const PathConstants& consts,
                                    const MeanCurvatureSpec& H, double m, Pipeline pipeline,
                                    double kappa, std::optional<double> A_override,
                                    OdeTol ode) {
    const double r_o = path.base().r_o();
    const double tau = H.tau(r_o);
    const double kap = (pipeline == Pipeline::Hyperbolic) ? kappa : 0.0;
    if (pipeline == Pipeline::Hyperbolic && !(kappa > 0.0))
        throw std::invalid_argument("CollarMetric: hyperbolic pipeline requires kappa > 0");

    const double k = collar_k(tau, m, r_o, kap);
    WarpParams wp{m, kap, r_o};

    // A round base profile has no velocity term; every A > 0 satisfies the
    // curvature bound, so the lapse scale defaults to r_o.
    AChoice choice =
        (consts.alpha == 0.0)
            ? AChoice{r_o, 0.0, 0.0, {}}
            : (pipeline == Pipeline::Flat ? choose_A_flat(consts, wp, k, ode)
                                          : choose_A_hyperbolic(consts, wp, k, kap, ode));
    double A = A_override.value_or(choice.A_o);
    if (!(A > 0.0)) throw std::invalid_argument("CollarMetric: A must be positive");

    WarpFunction warp(wp, A * k * (1.0 + 1e-9) + 1e-300, ode);
    return CollarMetric(std::move(path), consts, std::move(warp), tau, m, k, A, pipeline,
                        kap, choice);
}

double CollarMetric::scalar_curvature(double t, double x) const {
    double u = warp_.u(A_ * k_ * t);
    double q = path_.curvature_coeff(t, x);        // r_o^2 K_{g(t)}
    double ratio = path_.velocity_ratio(t, x);     // |g'|^2 = 2 ratio^2
    return 2.0 * (q - k_ * k_) / (u * u) - 0.5 * ratio * ratio / (A_ * A_) -
           6.0 * k_ * k_ * kappa_ * kappa_;
}

CurvatureCertificate CollarMetric::curvature_certificate(CollarGrid grid) const {
    auto xs = cheb::lobatto_nodes(grid.x_nodes);
    CurvatureCertificate cert;
    cert.min_R = std::numeric_limits<double>::infinity();
    cert.floor = (pipeline_ == Pipeline::Flat) ? 0.0 : -6.0 * kappa_ * kappa_;
    cert.t_min = 0.0;
    cert.x_min = 0.0;
    cert.t_samples = grid.t_samples;
    cert.x_nodes = grid.x_nodes;
    for (std::size_t i = 0; i < grid.t_samples; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(grid.t_samples - 1);
        for (double x : xs) {
            double R = scalar_curvature(t, x);
            if (R < cert.min_R) {
                cert.min_R = R;
                cert.t_min = t;
                cert.x_min = x;
            }
        }
    }
    return cert;
}

SliceReport CollarMetric::slice_report(double t) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("slice_report: t must lie in [0,1]");
    const double r_o = path_.base().r_o();
    double u = warp_.u(A_ * k_ * t);
    double up = warp_.du(A_ * k_ * t);

    SliceReport rep;
    rep.t = t;
    rep.area = 4.0 * std::numbers::pi * u * u;
    rep.mean_curvature = 2.0 * k_ * up / u;

    double tau_t = k_ * up;  // area radius u times H_t / 2
    if (pipeline_ == Pipeline::Flat) {
        double mass_base = 0.5 * r_o * (1.0 - tau_ * tau_);
        rep.mass_formula = 0.5 * (u - r_o) * (1.0 - k_ * k_) + mass_base;
        rep.mass_direct = 0.5 * u * (1.0 - tau_t * tau_t);
    } else {
        double kr = kappa_ * r_o;
        double mass_base = 0.5 * r_o * (1.0 + kr * kr - tau_ * tau_);
        rep.mass_formula = 0.5 * (u - r_o) * (1.0 - k_ * k_) +
                           0.5 * kappa_ * kappa_ * (1.0 - k_ * k_) * (u * u * u - r_o * r_o * r_o) +
                           mass_base;
        rep.mass_direct = 0.5 * u * (1.0 + kappa_ * kappa_ * u * u - tau_t * tau_t);
    }
    rep.mass_consistency = std::fabs(rep.mass_formula - rep.mass_direct);

    auto xs = cheb::lobatto_nodes(257);
    double mn = std::numeric_limits<double>::infinity();
    for (double x : xs) mn = std::min(mn, scalar_curvature(t, x));
    rep.min_R = mn;
    return rep;
}

// ---------------------------------------------------------------------------
// Limit study
// ---------------------------------------------------------------------------

std::vector<double> default_m_sequence(int j_lo, int j_hi) {
    std::vector<double> m;
    for (int j = j_lo; j <= j_hi; ++j) m.push_back(-std::pow(10.0, j));
    return m;
}

LimitStudy limit_study(const PathConstants& consts, double tau, double r_o,
                       Pipeline pipeline, double kappa, std::span<const double> m_seq,
                       OdeTol ode) {
    LimitStudy study;

    if (pipeline == Pipeline::Flat) {
        double zeta_coeff = std::sqrt(0.5 * consts.alpha / consts.beta);
        ThetaResult th = theta_root(tau, zeta_coeff);
        study.root = th.theta;
        study.u_limit = r_o * th.theta * th.theta;
        study.A_limit = r_o * th.theta * th.theta * zeta_coeff;
        study.mass_limit = 0.5 * r_o * (th.theta * th.theta - tau * tau);
    } else {
        XiResult xi = xi_root(consts.alpha, consts.beta, tau, kappa, r_o);
        study.root = xi.xi;
        double base = 1.0 + 1.5 * tau * xi.xi;
        double kr2 = kappa * kappa * r_o * r_o;
        study.u_limit = r_o * std::pow(base, 2.0 / 3.0);
        study.A_limit = r_o * xi.xi;
        double mass_base = 0.5 * r_o * (1.0 + kr2 - tau * tau);
        study.mass_limit =
            0.5 * r_o * (std::pow(base, 2.0 / 3.0) + kr2 * base * base - 1.0 - kr2) + mass_base;
    }

    for (double m : m_seq) {
        if (!(m < 0.0)) throw std::invalid_argument("limit_study: m-sequence must be negative");
        double k = collar_k(tau, m, r_o, (pipeline == Pipeline::Hyperbolic) ? kappa : 0.0);
        WarpParams wp{m, (pipeline == Pipeline::Hyperbolic) ? kappa : 0.0, r_o};
        AChoice ch = (pipeline == Pipeline::Flat)
                         ? choose_A_flat(consts, wp, k, ode)
                         : choose_A_hyperbolic(consts, wp, k, kappa, ode);

        WarpFunction warp(wp, ch.A_o * k * (1.0 + 1e-9) + 1e-300, ode);
        double u = warp.u(ch.A_o * k);

        double mass;
        if (pipeline == Pipeline::Flat) {
            mass = 0.5 * (u - r_o) * (1.0 - k * k) + 0.5 * r_o * (1.0 - tau * tau);
        } else {
            double kr2 = kappa * kappa * r_o * r_o;
            mass = 0.5 * (u - r_o) * (1.0 - k * k) +
                   0.5 * kappa * kappa * (1.0 - k * k) * (u * u * u - r_o * r_o * r_o) +
                   0.5 * r_o * (1.0 + kr2 - tau * tau);
        }

        LimitRow row;
        row.m = m;
        row.k = k;
        row.A_o = ch.A_o;
        row.u_at_Ak = u;
        row.mass_slice1 = mass;
        row.dev_u = std::fabs(u / study.u_limit - 1.0);
        row.dev_A = std::fabs(ch.A_o / study.A_limit - 1.0);
        row.dev_mass = std::fabs(mass / study.mass_limit - 1.0);
        study.rows.push_back(row);
    }
    return study;
}

}  // namespace qlm
