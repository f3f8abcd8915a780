#pragma once

#include <optional>

namespace qlm {

/// Unique positive root of theta^3 - (3 zeta tau / 2) theta^2 - 1 = 0,
/// bracketed in [1, 1 + (3/2) tau zeta].
struct ThetaResult {
    double theta;
    double residual;
    double tau;
    double zeta;
};

ThetaResult theta_root(double tau, double zeta);

/// f(x) <= 0 with f(x) = x^3 - (3 zeta tau / 2) x^2 - 1; equivalent to x <= theta.
bool theta_sign_equivalence(double x, double tau, double zeta);

/// Phi(tau) = (tau^2 + lambda)^{3/2} - b tau (tau^2 + lambda) - 1.
double phi(double tau, double b, double lambda);

/// b < min{lambda, 1} / sqrt(1 + lambda); when true, Phi(tau) > 0 for all tau >= 1.
bool phi_criterion(double b, double lambda);

enum class XiBranch { BetaNonpositiveClosedForm, BetaPositivePsiRoot };

struct XiResult {
    double xi;
    double residual;
    XiBranch branch;
    std::optional<double> theta_kappa;  // xi * sqrt(2 beta / alpha), beta > 0 only
};

/// Psi(x) = beta + (3 kappa^2 r_o^2 - (alpha/2) x^{-2}) (1 + (3/2) tau x)^{4/3};
/// strictly increasing on (0, inf).
double psi(double x, double alpha, double beta, double tau, double kappa, double r_o);

/// Hyperbolic collar constant xi:
///   beta <= 0: closed form sqrt((alpha/2) / (beta + 3 kappa^2 r_o^2));
///   beta  > 0: unique positive root of Psi, bracketed from below by the
///              closed form and above by geometric expansion.
/// Requires kappa > 0, alpha > 0, beta + 3 kappa^2 r_o^2 > 0.
XiResult xi_root(double alpha, double beta, double tau, double kappa, double r_o);

}  // namespace qlm
