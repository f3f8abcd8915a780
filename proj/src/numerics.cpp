#include "qlm/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace qlm::num {

namespace {

bool converged(double lo, double hi, const RootOpts& opts) {
    double scale = std::max(1.0, std::max(std::fabs(lo), std::fabs(hi)));
    return (hi - lo) <= opts.x_tol * scale;
}

}  // namespace

double solve_bracketed(const std::function<double(double)>& f, double lo, double hi,
                       RootOpts opts) {
    return solve_bracketed(f, nullptr, lo, hi, opts);
}

double solve_bracketed(const std::function<double(double)>& f,
                       const std::function<double(double)>& df, double lo, double hi,
                       RootOpts opts) {
    if (!(lo <= hi)) throw std::invalid_argument("solve_bracketed: empty bracket");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        throw std::invalid_argument("solve_bracketed: no sign change on bracket");

    double x = 0.5 * (lo + hi);
    for (int it = 0; it < opts.max_iter; ++it) {
        double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (fhi > 0.0)) {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
        if (converged(lo, hi, opts)) return 0.5 * (lo + hi);

        // Newton step when it stays inside the bracket, bisection otherwise.
        double xn = 0.0;
        bool have_step = false;
        if (df) {
            double d = df(x);
            if (d != 0.0) {
                xn = x - fx / d;
                have_step = (xn > lo && xn < hi);
            }
        }
        if (!have_step) xn = 0.5 * (lo + hi);

        double scale = std::max(1.0, std::fabs(x));
        if (std::fabs(xn - x) <= opts.x_tol * scale) return xn;
        x = xn;
    }
    return x;
}

double refine_maximum(const std::function<double(double)>& f, double a, double b,
                      int iters) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters && (b - a) > 1e-15 * (1.0 + std::fabs(a) + std::fabs(b)); ++i) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a); f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a); f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace qlm::num
