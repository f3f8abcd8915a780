#pragma once

#include <functional>

namespace qlm::num {

struct RootOpts {
    double x_tol = 1e-13;    // absolute + relative tolerance on the root
    int max_iter = 200;
};

/// Root of f on [lo, hi], where f(lo) and f(hi) have opposite (or zero) sign.
/// Bisection, optionally accelerated by safeguarded Newton steps when a
/// derivative is supplied. Throws std::invalid_argument if the bracket is bad.
double solve_bracketed(const std::function<double(double)>& f, double lo, double hi,
                       RootOpts opts = {});

double solve_bracketed(const std::function<double(double)>& f,
                       const std::function<double(double)>& df, double lo, double hi,
                       RootOpts opts = {});

/// Smallest maximizer refinement: given a bracket [a, b] containing a local
/// extremum of a smooth f, a few golden-section steps. Returns arg.
double refine_maximum(const std::function<double(double)>& f, double a, double b,
                      int iters = 48);

}  // namespace qlm::num
