#include "qlm/sphere_metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qlm/errors.hpp"
#include "qlm/numerics.hpp"

namespace qlm {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

AxisymMetricSpec::AxisymMetricSpec(double r_o, cheb::Series w, bool round_tag)
    : r_o_(r_o),
      round_(round_tag),
      w_(std::move(w)),
      P_(w_.times_monomial(std::array{1.0, 0.0, -1.0})),
      dP_(P_.derivative()),
      d2P_(dP_.derivative()) {}

AxisymMetricSpec AxisymMetricSpec::round(double r_o) {
    if (!(r_o > 0.0) || !std::isfinite(r_o))
        throw std::invalid_argument("AxisymMetricSpec: r_o must be positive");
    return AxisymMetricSpec(r_o, cheb::Series::constant(1.0), true);
}

AxisymMetricSpec AxisymMetricSpec::from_profile(double r_o, cheb::Series w,
                                                double pole_tol) {
    if (!(r_o > 0.0) || !std::isfinite(r_o))
        throw std::invalid_argument("AxisymMetricSpec: r_o must be positive");

    const double w_left = w(-1.0);
    const double w_right = w(1.0);
    if (std::fabs(w_left - 1.0) > pole_tol || std::fabs(w_right - 1.0) > pole_tol)
        throw std::invalid_argument(
            "AxisymMetricSpec: pole regularity requires w(-1) = w(1) = 1, got w(-1) = " +
            std::to_string(w_left) + ", w(1) = " + std::to_string(w_right));

    // Positivity of the profile, checked on a dense grid.
    auto xs = cheb::lobatto_nodes(1025);
    bool constant_one = true;
    for (double x : xs) {
        double v = w(x);
        if (!std::isfinite(v))
            throw std::invalid_argument("AxisymMetricSpec: non-finite profile sample");
        if (!(v > 0.0))
            throw std::invalid_argument("AxisymMetricSpec: w must be positive on [-1,1]");
        if (v != 1.0) constant_one = false;
    }
    return AxisymMetricSpec(r_o, std::move(w), constant_one);
}

double AxisymMetricSpec::gauss_curvature(double x) const {
    if (!(x >= -1.0 && x <= 1.0))
        throw std::invalid_argument("gauss_curvature: x outside [-1,1]");
    double v = -d2P_(x) / (2.0 * r_o_ * r_o_);
    if (!std::isfinite(v)) throw std::runtime_error("gauss_curvature: non-finite value");
    return v;
}

MeanCurvatureSpec MeanCurvatureSpec::of(double H_o) {
    if (!(H_o > 0.0) || !std::isfinite(H_o))
        throw std::invalid_argument("MeanCurvatureSpec: H_o must be positive");
    return MeanCurvatureSpec{H_o};
}

HorizonSpec HorizonSpec::of(double r_h) {
    if (!(r_h > 0.0) || !std::isfinite(r_h))
        throw std::invalid_argument("HorizonSpec: r_h must be positive");
    return HorizonSpec{r_h};
}

SurfaceData surface_data(const AxisymMetricSpec& g, std::size_t x_nodes) {
    const double ro2 = g.r_o() * g.r_o();
    auto xs = cheb::lobatto_nodes(x_nodes);
    auto ws = cheb::quadrature_weights(x_nodes);

    double k_min = std::numeric_limits<double>::infinity();
    double k_max = -k_min;
    std::size_t j_min = 0, j_max = 0;
    double total = 0.0;  // int K dsigma = 2 pi r_o^2 int K dx
    for (std::size_t j = 0; j < x_nodes; ++j) {
        double K = g.gauss_curvature(xs[j]);
        if (K < k_min) { k_min = K; j_min = j; }
        if (K > k_max) { k_max = K; j_max = j; }
        total += ws[j] * K;
    }
    total *= 2.0 * kPi * ro2;

    // local refinement of each extremum within its neighbouring cells
    auto refine = [&](std::size_t j, double sign) {
        double a = xs[j > 0 ? j - 1 : 0];
        double b = xs[j + 1 < x_nodes ? j + 1 : x_nodes - 1];
        if (!(b > a)) return sign * g.gauss_curvature(xs[j]);
        double x_star = num::refine_maximum(
            [&](double x) { return sign * g.gauss_curvature(x); }, a, b);
        return sign * g.gauss_curvature(x_star);
    };
    k_min = std::min(k_min, -refine(j_min, -1.0));
    k_max = std::max(k_max, refine(j_max, +1.0));

    SurfaceData d;
    d.area = 4.0 * kPi * ro2;
    d.r_o = g.r_o();
    d.k_min = k_min;
    d.k_max = k_max;
    d.gauss_bonnet_residual = std::fabs(total - 4.0 * kPi);
    return d;
}

double hawking_mass(const AxisymMetricSpec& g, const MeanCurvatureSpec& H) {
    double tau = H.tau(g.r_o());
    return 0.5 * g.r_o() * (1.0 - tau * tau);
}

double hyperbolic_hawking_mass(const AxisymMetricSpec& g, const MeanCurvatureSpec& H,
                               double kappa) {
    if (!(kappa > 0.0))
        throw std::invalid_argument("hyperbolic_hawking_mass: kappa must be positive");
    double tau = H.tau(g.r_o());
    double kr = kappa * g.r_o();
    return 0.5 * g.r_o() * (1.0 + kr * kr - tau * tau);
}

// ---------------------------------------------------------------------------
// Isometric embedding as a surface of revolution
// ---------------------------------------------------------------------------

RevolutionProfile embed_revolution(const AxisymMetricSpec& g, std::size_t x_nodes) {
    const double r_o = g.r_o();

    RevolutionProfile prof;
    prof.r_o_ = r_o;
    prof.P_ = g.P();
    prof.dP_ = g.dP();
    prof.d2P_ = g.d2P();
    prof.nodes_ = x_nodes;

    auto xs = cheb::lobatto_nodes(x_nodes);
    for (double x : xs) {
        if (!(g.gauss_curvature(x) > 0.0))
            throw EmbeddingError("embed_revolution: Gauss curvature not positive at x = " +
                                 std::to_string(x));
    }

    // z'(x)^2 = r_o^2 (1 - P'^2/4) / P. Both factors vanish at the poles;
    // the limit there is r_o^2 sqrt(K).
    std::vector<double> zp(x_nodes);
    for (std::size_t j = 0; j < x_nodes; ++j) {
        double x = xs[j];
        if (j == 0 || j + 1 == x_nodes) {
            zp[j] = r_o * std::sqrt(-prof.d2P_(x) * 0.5);
            continue;
        }
        double p = prof.P_(x);
        double dp = prof.dP_(x);
        double arg = (1.0 - 0.25 * dp * dp) / p;
        if (!(arg >= 0.0))
            throw EmbeddingError("embed_revolution: negative radicand at x = " +
                                 std::to_string(x));
        zp[j] = r_o * std::sqrt(arg);
    }

    prof.zp_ = cheb::Series::from_samples(zp);
    prof.zpp_ = prof.zp_.derivative();

    // Antiderivative of zp_ normalized to z(0) = 0.
    auto zc = prof.zp_.coefficients();
    std::vector<double> zint(zc.size() + 1, 0.0);
    for (std::size_t k = 0; k < zc.size(); ++k) {
        // int T_k = (T_{k+1}/(k+1) - T_{k-1}/(k-1)) / 2 for k >= 2
        if (k == 0) {
            zint[1] += zc[0];
        } else if (k == 1) {
            zint[2] += 0.25 * zc[1];
            zint[0] += 0.25 * zc[1];
        } else {
            zint[k + 1] += 0.5 * zc[k] / static_cast<double>(k + 1);
            zint[k - 1] -= 0.5 * zc[k] / static_cast<double>(k - 1);
        }
    }
    cheb::Series z_raw{std::move(zint)};
    prof.z_ = z_raw - cheb::Series::constant(z_raw(0.0));
    return prof;
}

double RevolutionProfile::rho(double x) const {
    double p = P_(x);
    return r_o_ * std::sqrt(std::max(p, 0.0));
}

double RevolutionProfile::mean_curvature(double x) const {
    // kappa_parallel = z' / r_o^2, since rho * sqrt(E) = r_o^2 in this chart.
    // kappa_meridian = (rho' z'' - z' rho'') / E^{3/2}; multiplying through by
    // P^{3/2} clears the pole singularities of rho', rho''.
    double p = P_(x);
    double dp = dP_(x);
    double ddp = d2P_(x);
    double zp = zp_(x);
    double zpp = zpp_(x);
    double kp = zp / (r_o_ * r_o_);
    double km = ((r_o_ * dp * p * 0.5) * zpp - zp * r_o_ * (ddp * p * 0.5 - dp * dp * 0.25)) /
                (r_o_ * r_o_ * r_o_);
    return kp + km;
}

double RevolutionProfile::induced_metric_residual() const {
    auto xs = cheb::lobatto_nodes(nodes_);
    auto zd = z_.derivative();
    double worst = 0.0;
    for (std::size_t j = 1; j + 1 < nodes_; ++j) {
        double x = xs[j];
        double p = P_(x);
        double rhop = r_o_ * dP_(x) / (2.0 * std::sqrt(p));
        double e_target = r_o_ * r_o_ / p;
        double zdx = zd(x);
        double e = rhop * rhop + zdx * zdx;
        worst = std::max(worst, std::fabs(e - e_target) / e_target);
    }
    return worst;
}

BrownYorkReport brown_york_mass(const AxisymMetricSpec& g, const MeanCurvatureSpec& H,
                                std::size_t x_nodes) {
    auto prof = embed_revolution(g, x_nodes);
    const double r_o = g.r_o();
    const double tau = H.tau(r_o);

    auto xs = cheb::lobatto_nodes(x_nodes);
    auto ws = cheb::quadrature_weights(x_nodes);
    double int_HE = 0.0;  // int H_E dsigma = 2 pi r_o^2 int H_E dx
    double int_diff = 0.0;
    for (std::size_t j = 0; j < x_nodes; ++j) {
        double he = prof.mean_curvature(xs[j]);
        int_HE += ws[j] * he;
        int_diff += ws[j] * (he - H.H_o);
    }
    int_HE *= 2.0 * kPi * r_o * r_o;
    int_diff *= 2.0 * kPi * r_o * r_o;

    BrownYorkReport rep;
    rep.m_by = int_diff / (8.0 * kPi);
    rep.m_h = hawking_mass(g, H);
    rep.middle_term = int_HE / (8.0 * kPi) - r_o;
    rep.last_term = 0.5 * r_o * (1.0 - tau) * (1.0 - tau);
    rep.identity_residual =
        std::fabs(rep.m_by - (rep.m_h + rep.middle_term + rep.last_term));
    return rep;
}

}  // namespace qlm
