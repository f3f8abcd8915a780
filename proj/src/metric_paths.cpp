#include "qlm/metric_paths.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "qlm/errors.hpp"
#include "qlm/numerics.hpp"

namespace qlm {

TraceFreePath::TraceFreePath(AxisymMetricSpec g, TimeMap map)
    : g_(std::move(g)), map_(map), d2P0_(g_.d2P()) {}

double TraceFreePath::w_at(double t, double x) const {
    double s = map_.sigma(t);
    return (1.0 - s) * g_.w()(x) + s;
}

double TraceFreePath::P_at(double t, double x) const {
    return (1.0 - x * x) * w_at(t, x);
}

double TraceFreePath::curvature_coeff(double t, double x) const {
    // P_t = (1-s) P_0 + s (1-x^2), and (1-x^2)'' = -2.
    double s = map_.sigma(t);
    return -0.5 * ((1.0 - s) * d2P0_(x) + s * (-2.0));
}

double TraceFreePath::velocity_ratio(double t, double x) const {
    double s = map_.sigma(t);
    double w0 = g_.w()(x);
    double wt = (1.0 - s) * w0 + s;
    return map_.dsigma(t) * (1.0 - w0) / wt;
}

double TraceFreePath::trace_residual(double t, double x) const {
    // g'_{xx} = -r_o^2 Pdot / P^2, g'_{pp} = r_o^2 Pdot; contract with the
    // inverse metric. Written with independent evaluation orders so the
    // cancellation is numerical, not syntactic.
    double ro2 = g_.r_o() * g_.r_o();
    double p = P_at(t, x);
    double pdot = map_.dsigma(t) * ((1.0 - x * x) - g_.P()(x));
    double gdot_xx = -(ro2 * pdot) / (p * p);
    double gdot_pp = ro2 * pdot;
    double ginv_xx = p / ro2;
    double ginv_pp = 1.0 / (ro2 * p);
    return ginv_xx * gdot_xx + ginv_pp * gdot_pp;
}

namespace {

// Dense scan followed by coordinate-wise golden-section refinement.
double max_over_grid(const std::function<double(double, double)>& f,
                     const std::vector<double>& ts, const std::vector<double>& xs) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) {
            double v = f(ts[i], xs[j]);
            if (v > best) {
                best = v;
                bi = i;
                bj = j;
            }
        }

    double t_lo = ts[bi > 0 ? bi - 1 : 0];
    double t_hi = ts[bi + 1 < ts.size() ? bi + 1 : ts.size() - 1];
    double x_lo = xs[bj > 0 ? bj - 1 : 0];
    double x_hi = xs[bj + 1 < xs.size() ? bj + 1 : xs.size() - 1];

    double t_star = ts[bi];
    double x_star = xs[bj];
    for (int pass = 0; pass < 2; ++pass) {
        if (x_hi > x_lo)
            x_star = num::refine_maximum([&](double x) { return f(t_star, x); }, x_lo, x_hi);
        if (t_hi > t_lo)
            t_star = num::refine_maximum([&](double t) { return f(t, x_star); }, t_lo, t_hi);
    }
    return std::max(best, f(t_star, x_star));
}

std::vector<double> uniform_grid(std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    return t;
}

}  // namespace

PathConstants path_constants(const TraceFreePath& path, PathGrid grid) {
    auto ts = uniform_grid(grid.t_samples);
    auto xs = cheb::lobatto_nodes(grid.x_nodes);

    double max_ratio_sq = max_over_grid(
        [&](double t, double x) {
            double r = path.velocity_ratio(t, x);
            return r * r;
        },
        ts, xs);
    double neg_curv = max_over_grid(
        [&](double t, double x) { return -path.curvature_coeff(t, x); }, ts, xs);

    PathConstants c;
    c.alpha = 0.5 * max_ratio_sq;  // (1/4) |g'|^2 = (1/4) * 2 ratio^2
    c.beta = -neg_curv;
    return c;
}

PathConstants path_constants(const TraceFreePath& path, Pipeline pipeline, double kappa,
                             PathGrid grid) {
    PathConstants c = path_constants(path, grid);
    double r_o = path.base().r_o();
    if (pipeline == Pipeline::Flat) {
        if (!(c.beta > 0.0))
            throw AdmissibilityError("beta_nonpositive",
                                     "flat pipeline requires K > 0 along the path (beta = " +
                                         std::to_string(c.beta) + ")");
    } else {
        double floor = -3.0 * kappa * kappa * r_o * r_o;
        if (!(c.beta > floor))
            throw AdmissibilityError(
                "curvature_floor_violated",
                "hyperbolic pipeline requires K > -3 kappa^2 along the path");
    }
    return c;
}

std::string PathFamily::describe() const {
    if (reparam_grid == 0) return "linear";
    return "linear+reparam(" + std::to_string(reparam_grid) + ")";
}

namespace {

ZetaEstimate zeta_search(const AxisymMetricSpec& g, Pipeline pipe, double kappa,
                         PathFamily family, PathGrid grid) {
    double ro2 = g.r_o() * g.r_o();
    double denom_shift = (pipe == Pipeline::Hyperbolic) ? 6.0 * kappa * kappa * ro2 : 0.0;

    std::vector<TimeMap> candidates{TimeMap{}};
    for (std::size_t i = 0; i < family.reparam_grid; ++i) {
        double c = -0.9 + 1.8 * static_cast<double>(i + 1) /
                              static_cast<double>(family.reparam_grid + 1);
        candidates.push_back(TimeMap{c});
    }

    ZetaEstimate best;
    best.kind = pipe;
    best.kappa = kappa;
    best.family = family.describe();
    best.value = std::numeric_limits<double>::infinity();

    bool any_admissible = false;
    for (const auto& map : candidates) {
        TraceFreePath path(g, map);
        PathConstants c = path_constants(path, grid);
        // Candidates violating the curvature floor are discarded, not clamped.
        if (pipe == Pipeline::Flat && !(c.beta > 0.0)) continue;
        if (pipe == Pipeline::Hyperbolic && !(c.beta > -0.5 * denom_shift)) continue;
        any_admissible = true;

        double denom = 2.0 * c.beta + denom_shift;
        double value = (c.alpha == 0.0) ? 0.0 : std::sqrt(c.alpha / denom);
        if (value < best.value) {
            best.value = value;
            best.best_constants = c;
            best.best_map = map;
        }
    }
    if (!any_admissible)
        throw AdmissibilityError(pipe == Pipeline::Flat ? "beta_nonpositive"
                                                        : "curvature_floor_violated",
                                 "no admissible path in the searched family");
    return best;
}

}  // namespace

ZetaEstimate zeta_upper_bound(const AxisymMetricSpec& g, PathFamily family, PathGrid grid) {
    return zeta_search(g, Pipeline::Flat, 0.0, family, grid);
}

ZetaEstimate zeta_kappa_upper_bound(const AxisymMetricSpec& g, double kappa,
                                    PathFamily family, PathGrid grid) {
    if (!(kappa > 0.0))
        throw std::invalid_argument("zeta_kappa_upper_bound: kappa must be positive");
    return zeta_search(g, Pipeline::Hyperbolic, kappa, family, grid);
}

}  // namespace qlm
