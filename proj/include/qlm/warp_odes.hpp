#pragma once

#include <vector>

namespace qlm {

/// Radial profile parameters for the warped collar: u'(s) = sqrt(radicand(u)),
/// u(0) = r_o, with radicand(u) = 1 - 2m/u + kappa^2 u^2. kappa = 0 is the
/// Schwarzschild case, kappa > 0 the AdS-Schwarzschild case.
struct WarpParams {
    double m;
    double kappa;
    double r_o;
};

struct OdeTol {
    double rtol = 1e-12;
    double atol = 1e-14;
};

double warp_radicand(const WarpParams& p, double u);

/// Dense ODE solution on [0, s_max]: adaptive Dormand-Prince 5(4) steps with
/// quintic Hermite interpolation (the second derivative u'' = m/u^2 +
/// kappa^2 u is available in closed form at every node).
class WarpSolution {
public:
    double u(double s) const;
    double du(double s) const;
    double s_max() const { return s_max_; }
    std::size_t steps() const { return seg_.size(); }

private:
    friend WarpSolution integrate_warp(const WarpParams&, double, OdeTol);
    struct Segment {
        double s0, h;
        double c[6];  // u(s0 + theta h) = sum c_i theta^i
    };
    std::vector<double> breaks_;
    std::vector<Segment> seg_;
    double s_max_ = 0.0;
    double u_end_ = 0.0, du_end_ = 0.0;
};

WarpSolution integrate_warp(const WarpParams& p, double s_max, OdeTol tol = {});

/// Closed-form arclength s(u) for m < 0, kappa = 0 (the sinh substitution).
/// Exact and stable for arbitrarily large |m|.
double flat_s_from_u(double m, double r_o, double u);

/// Inverse of flat_s_from_u: u(s) by bracketed Newton on the closed form.
double flat_u_from_s(double m, double r_o, double s);

/// Unified evaluator: closed form for kappa = 0, m <= 0; integrator-backed
/// table on [0, s_hint] otherwise. Immutable after construction.
class WarpFunction {
public:
    WarpFunction(WarpParams p, double s_hint, OdeTol tol = {});

    double u(double s) const;
    double du(double s) const;
    const WarpParams& params() const { return p_; }

    bool closed_form() const { return closed_; }

private:
    WarpParams p_;
    bool closed_;
    WarpSolution table_;
};

/// A-priori control of the AdS-Schwarzschild profile at s = A k (m < 0):
/// u_star bounds u(s) from above, and u(s)^{3/2} is sandwiched between
/// lower_u32 and upper_u32.
struct WarpBracket {
    double u_star;
    double lower_u32;
    double upper_u32;
};

WarpBracket warp_upper_bounds_hyperbolic(const WarpParams& p, double A, double k);

}  // namespace qlm
