#include "qlm/roots.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qlm/numerics.hpp"

namespace qlm {

ThetaResult theta_root(double tau, double zeta) {
    if (!(tau >= 0.0) || !(zeta >= 0.0) || !std::isfinite(tau) || !std::isfinite(zeta))
        throw std::invalid_argument("theta_root: tau, zeta must be finite and nonnegative");

    const double c = 1.5 * tau * zeta;
    auto f = [c](double x) { return x * x * x - c * x * x - 1.0; };
    auto df = [c](double x) { return 3.0 * x * x - 2.0 * c * x; };

    double theta;
    if (c == 0.0) {
        theta = 1.0;
    } else {
        theta = num::solve_bracketed(f, df, 1.0, 1.0 + c, num::RootOpts{1e-14, 300});
    }
    return ThetaResult{theta, f(theta), tau, zeta};
}

bool theta_sign_equivalence(double x, double tau, double zeta) {
    if (!(x > 0.0)) throw std::invalid_argument("theta_sign_equivalence: x must be positive");
    const double c = 1.5 * tau * zeta;
    return x * x * x - c * x * x - 1.0 <= 0.0;
}

double phi(double tau, double b, double lambda) {
    double q = tau * tau + lambda;
    return q * std::sqrt(q) - b * tau * q - 1.0;
}

bool phi_criterion(double b, double lambda) {
    if (!(b > 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("phi_criterion: b, lambda must be positive");
    return b < std::min(lambda, 1.0) / std::sqrt(1.0 + lambda);
}

double psi(double x, double alpha, double beta, double tau, double kappa, double r_o) {
    double kr2 = kappa * kappa * r_o * r_o;
    double base = 1.0 + 1.5 * tau * x;
    return beta + (3.0 * kr2 - 0.5 * alpha / (x * x)) * std::pow(base, 4.0 / 3.0);
}

XiResult xi_root(double alpha, double beta, double tau, double kappa, double r_o) {
    if (!(kappa > 0.0)) throw std::invalid_argument("xi_root: kappa must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("xi_root: alpha must be positive");
    const double kr2 = kappa * kappa * r_o * r_o;
    if (!(beta + 3.0 * kr2 > 0.0))
        throw std::invalid_argument("xi_root: beta + 3 kappa^2 r_o^2 must be positive");

    const double closed = std::sqrt(0.5 * alpha / (beta + 3.0 * kr2));
    if (beta <= 0.0) return XiResult{closed, 0.0, XiBranch::BetaNonpositiveClosedForm, {}};

    auto f = [&](double x) { return psi(x, alpha, beta, tau, kappa, r_o); };
    auto df = [&](double x) {
        double base = 1.0 + 1.5 * tau * x;
        return (6.0 * kr2 * tau + alpha / (x * x * x) + 0.5 * alpha * tau / (x * x)) *
               std::cbrt(base);
    };

    // Psi(closed) <= 0 since the kappa term is absorbed into the closed form.
    double lo = closed;
    double hi = closed;
    int expansions = 0;
    while (f(hi) <= 0.0) {
        hi *= 2.0;
        if (++expansions > 20 || hi > 1e6 * closed)
            throw std::runtime_error("xi_root: bracket expansion failed");
    }
    double xi = num::solve_bracketed(f, df, lo, hi, num::RootOpts{1e-14, 300});

    // xi = sqrt(alpha/(2 beta)) theta_kappa^2
    XiResult r{xi, f(xi), XiBranch::BetaPositivePsiRoot,
               std::sqrt(xi * std::sqrt(2.0 * beta / alpha))};
    return r;
}

}  // namespace qlm
