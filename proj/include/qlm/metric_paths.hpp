#pragma once

#include <cstddef>
#include <string>

#include "qlm/sphere_metrics.hpp"

namespace qlm {

enum class Pipeline { Flat, Hyperbolic };

/// Monotone time reparametrization sigma(t) = (1-c) t + c t^2, |c| < 1.
/// c = 0 is the identity. Reparametrizing trades the velocity maximum
/// (hence alpha) while leaving the traversed metrics, and beta, unchanged.
struct TimeMap {
    double c = 0.0;
    double sigma(double t) const { return (1.0 - c) * t + c * t * t; }
    double dsigma(double t) const { return (1.0 - c) + 2.0 * c * t; }
};

/// Path of metrics g(t) from g to the round metric through profile
/// interpolation: w(t,x) = (1 - sigma(t)) w(x) + sigma(t). The fixed-area-form
/// chart makes every such path trace-free by construction.
class TraceFreePath {
public:
    explicit TraceFreePath(AxisymMetricSpec g, TimeMap map = {});

    double w_at(double t, double x) const;
    double P_at(double t, double x) const;

    /// r_o^2 K_{g(t)}(x) = -P_t''(x)/2
    double curvature_coeff(double t, double x) const;

    /// dP/dt over P_t, evaluated pole-safely as sigma'(t) (1 - w) / w_t.
    /// |g'(t)|^2_{g(t)} = 2 * (this)^2.
    double velocity_ratio(double t, double x) const;

    /// tr_{g(t)} g'(t) computed from the chart components; identically zero
    /// up to rounding.
    double trace_residual(double t, double x) const;

    const AxisymMetricSpec& base() const { return g_; }
    const TimeMap& time_map() const { return map_; }

private:
    AxisymMetricSpec g_;
    TimeMap map_;
    cheb::Series d2P0_;  // cached P''(x) of the base profile
};

struct PathConstants {
    double alpha;  // (1/4) max |g'|^2
    double beta;   // r_o^2 min K_{g(t)}
};

struct PathGrid {
    std::size_t t_samples = 101;
    std::size_t x_nodes = 257;
};

/// Extrema of the velocity and curvature over the (t,x) grid, with local
/// refinement of both maxima.
PathConstants path_constants(const TraceFreePath& path, PathGrid grid = {});

/// Same, then enforces the pipeline curvature floor (flat: beta > 0;
/// hyperbolic: beta > -3 kappa^2 r_o^2). Throws AdmissibilityError.
PathConstants path_constants(const TraceFreePath& path, Pipeline pipeline, double kappa,
                             PathGrid grid = {});

struct PathFamily {
    std::size_t reparam_grid = 0;  // 0: linear path only
    static PathFamily linear() { return {}; }
    static PathFamily with_reparam(std::size_t n) { return {n}; }
    std::string describe() const;
};

/// Certified upper bound for the roundness deficit: min over the searched
/// family of sqrt(alpha / (2 beta)) (flat) or sqrt(alpha / (2 beta +
/// 6 kappa^2 r_o^2)) (hyperbolic). Never an exact infimum.
struct ZetaEstimate {
    double value = 0.0;
    Pipeline kind = Pipeline::Flat;
    double kappa = 0.0;
    std::string family;
    bool certified_upper_bound = true;
    PathConstants best_constants{0.0, 1.0};
    TimeMap best_map{};
};

ZetaEstimate zeta_upper_bound(const AxisymMetricSpec& g, PathFamily family = {},
                              PathGrid grid = {});

ZetaEstimate zeta_kappa_upper_bound(const AxisymMetricSpec& g, double kappa,
                                    PathFamily family = {}, PathGrid grid = {});

}  // namespace qlm
