#include "qlm/warp_odes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qlm/numerics.hpp"

namespace qlm {

double warp_radicand(const WarpParams& p, double u) {
    return 1.0 - 2.0 * p.m / u + p.kappa * p.kappa * u * u;
}

namespace {

double warp_rhs(const WarpParams& p, double u) {
    double r = warp_radicand(p, u);
    if (!(r > 0.0)) throw std::runtime_error("warp ODE: radicand nonpositive at u = " +
                                             std::to_string(u));
    return std::sqrt(r);
}

double warp_second(const WarpParams& p, double u) {
    return p.m / (u * u) + p.kappa * p.kappa * u;
}

// sinh(y) - y, series-protected near zero.
double sinh_minus_y(double y) {
    double ay = std::fabs(y);
    if (ay >= 0.5) return std::sinh(y) - y;
    double y2 = y * y;
    double term = y * y2 / 6.0;
    double sum = term;
    for (int k = 1; k < 30; ++k) {
        term *= y2 / static_cast<double>((2 * k + 2) * (2 * k + 3));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

}  // namespace

// ---------------------------------------------------------------------------
// Adaptive Dormand-Prince 5(4)
// ---------------------------------------------------------------------------

WarpSolution integrate_warp(const WarpParams& p, double s_max, OdeTol tol) {
    if (!(s_max >= 0.0)) throw std::invalid_argument("integrate_warp: s_max must be >= 0");
    if (!(warp_radicand(p, p.r_o) > 0.0))
        throw std::invalid_argument("integrate_warp: radicand nonpositive at r_o");

    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                            e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                            e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

    WarpSolution sol;
    sol.s_max_ = s_max;
    sol.breaks_.push_back(0.0);

    double s = 0.0;
    double u = p.r_o;
    double f = warp_rhs(p, u);
    if (s_max == 0.0) {
        sol.u_end_ = u;
        sol.du_end_ = f;
        return sol;
    }

    double h = std::min(s_max, 0.01 * u / std::max(f, 1e-30));
    h = std::min(std::max(h, s_max * 1e-12), s_max);

    const int max_steps = 2000000;
    for (int step = 0; step < max_steps && s < s_max; ++step) {
        if (s + h > s_max) h = s_max - s;

        double k1 = f;
        double k2 = warp_rhs(p, u + h * (a21 * k1));
        double k3 = warp_rhs(p, u + h * (a31 * k1 + a32 * k2));
        double k4 = warp_rhs(p, u + h * (a41 * k1 + a42 * k2 + a43 * k3));
        double k5 = warp_rhs(p, u + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        double k6 = warp_rhs(p, u + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        double u_new = u + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        double k7 = warp_rhs(p, u_new);

        double err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double scale = tol.atol + tol.rtol * std::max(std::fabs(u), std::fabs(u_new));
        double ratio = std::fabs(err) / scale;

        if (ratio <= 1.0) {
            // Accept: store a quintic Hermite segment with exact u'' at the ends.
            WarpSolution::Segment seg;
            seg.s0 = s;
            seg.h = h;
            double f_new = k7;
            double d0 = warp_second(p, u);
            double d1 = warp_second(p, u_new);
            double c0 = u, c1 = h * f, c2 = 0.5 * h * h * d0;
            double A = u_new - c0 - c1 - c2;
            double B = h * f_new - c1 - 2.0 * c2;
            double C = h * h * d1 - 2.0 * c2;
            seg.c[0] = c0;
            seg.c[1] = c1;
            seg.c[2] = c2;
            seg.c[3] = 10.0 * A - 4.0 * B + 0.5 * C;
            seg.c[4] = -15.0 * A + 7.0 * B - C;
            seg.c[5] = 6.0 * A - 3.0 * B + 0.5 * C;
            sol.seg_.push_back(seg);

            s += h;
            u = u_new;
            f = f_new;
            sol.breaks_.push_back(s);
        }

        double grow = 0.9 * std::pow(std::max(ratio, 1e-10), -0.2);
        h *= std::clamp(grow, 0.2, 5.0);
        if (!(h > 0.0) || !std::isfinite(h))
            throw std::runtime_error("integrate_warp: step size collapsed");
    }
    if (s < s_max) throw std::runtime_error("integrate_warp: step limit exceeded");

    sol.u_end_ = u;
    sol.du_end_ = f;
    return sol;
}

double WarpSolution::u(double s) const {
    if (!(s >= 0.0 && s <= s_max_ * (1.0 + 1e-12) + 1e-300))
        throw std::out_of_range("WarpSolution::u: s outside [0, s_max]");
    if (seg_.empty() || s >= s_max_) return u_end_;
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
    std::size_t i = static_cast<std::size_t>(std::distance(breaks_.begin(), it));
    i = (i == 0) ? 0 : i - 1;
    if (i >= seg_.size()) i = seg_.size() - 1;
    const Segment& g = seg_[i];
    double th = (s - g.s0) / g.h;
    double v = g.c[5];
    for (int k = 4; k >= 0; --k) v = v * th + g.c[k];
    return v;
}

double WarpSolution::du(double s) const {
    if (!(s >= 0.0 && s <= s_max_ * (1.0 + 1e-12) + 1e-300))
        throw std::out_of_range("WarpSolution::du: s outside [0, s_max]");
    if (seg_.empty() || s >= s_max_) return du_end_;
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
    std::size_t i = static_cast<std::size_t>(std::distance(breaks_.begin(), it));
    i = (i == 0) ? 0 : i - 1;
    if (i >= seg_.size()) i = seg_.size() - 1;
    const Segment& g = seg_[i];
    double th = (s - g.s0) / g.h;
    double v = 5.0 * g.c[5];
    for (int k = 4; k >= 1; --k) v = v * th + static_cast<double>(k) * g.c[k];
    return v / g.h;
}

// ---------------------------------------------------------------------------
// Flat closed form (m < 0)
// ---------------------------------------------------------------------------

namespace {

// B(u) = v - sinh(v) cosh(v), v = asinh(sqrt(u/a)), a = -2m.
// Written as -(sinh(2v) - 2v)/2 so the small-v cancellation is absorbed
// by the series.
double flat_B(double u, double a) {
    double v = std::asinh(std::sqrt(u / a));
    return -0.5 * sinh_minus_y(2.0 * v);
}

}  // namespace

double flat_s_from_u(double m, double r_o, double u) {
    if (!(m < 0.0)) throw std::invalid_argument("flat_s_from_u: requires m < 0");
    if (!(u >= r_o)) throw std::invalid_argument("flat_s_from_u: requires u >= r_o");
    double a = -2.0 * m;
    return 2.0 * m * (flat_B(u, a) - flat_B(r_o, a));
}

double flat_u_from_s(double m, double r_o, double s) {
    if (!(m < 0.0)) throw std::invalid_argument("flat_u_from_s: requires m < 0");
    if (!(s >= 0.0)) throw std::invalid_argument("flat_u_from_s: requires s >= 0");
    if (s == 0.0) return r_o;
    double a = -2.0 * m;
    double lo = r_o + s;                                 // u' >= 1
    double hi = r_o + s * std::sqrt(1.0 + a / r_o);      // u' <= u'(0)
    auto f = [&](double u) { return flat_s_from_u(m, r_o, u) - s; };
    auto df = [&](double u) { return 1.0 / std::sqrt(1.0 + a / u); };
    return num::solve_bracketed(f, df, lo, hi * (1.0 + 1e-12), num::RootOpts{1e-14, 200});
}

// ---------------------------------------------------------------------------
// Unified evaluator
// ---------------------------------------------------------------------------

WarpFunction::WarpFunction(WarpParams p, double s_hint, OdeTol tol) : p_(p) {
    closed_ = (p.kappa == 0.0 && p.m <= 0.0);
    if (!closed_) table_ = integrate_warp(p, s_hint, tol);
}

double WarpFunction::u(double s) const {
    if (closed_) {
        if (p_.m == 0.0) return p_.r_o + s;
        return flat_u_from_s(p_.m, p_.r_o, s);
    }
    return table_.u(s);
}

double WarpFunction::du(double s) const {
    if (closed_) {
        if (p_.m == 0.0) return 1.0;
        return std::sqrt(warp_radicand(p_, u(s)));
    }
    return table_.du(s);
}

WarpBracket warp_upper_bounds_hyperbolic(const WarpParams& p, double A, double k) {
    if (!(p.m < 0.0) || !(p.kappa > 0.0))
        throw std::invalid_argument("warp_upper_bounds_hyperbolic: requires m < 0, kappa > 0");
    double s = A * k;
    double E = std::sqrt(warp_radicand(p, p.r_o));
    double u_star = p.r_o * std::cosh(p.kappa * s) + (E / p.kappa) * std::sinh(p.kappa * s);
    double r32 = std::pow(p.r_o, 1.5);
    WarpBracket b;
    b.u_star = u_star;
    b.lower_u32 = r32 + 1.5 * s * std::sqrt(-2.0 * p.m);
    b.upper_u32 =
        r32 + 1.5 * s * std::sqrt(u_star - 2.0 * p.m + p.kappa * p.kappa * u_star * u_star * u_star);
    return b;
}

}  // namespace qlm
