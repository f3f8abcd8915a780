#pragma once

#include <cstddef>
#include <optional>

#include "qlm/chebyshev.hpp"

namespace qlm {

/// Area-form-normalized axisymmetric metric on S^2:
///   g = r_o^2 [ P(x)^{-1} dx^2 + P(x) dphi^2 ],   P(x) = (1 - x^2) w(x),
/// with x in [-1,1], phi in [0, 2pi). The chart fixes the area form to
/// r_o^2 dx dphi, so |S^2| = 4 pi r_o^2 identically and the Gauss curvature
/// is the closed form K = -P''(x) / (2 r_o^2).
///
/// Invariants enforced on construction: w > 0 on [-1,1] and w(+-1) = 1
/// (cone-free poles, |P'(+-1)| = 2).
class AxisymMetricSpec {
public:
    static AxisymMetricSpec round(double r_o);
    static AxisymMetricSpec from_profile(double r_o, cheb::Series w,
                                         double pole_tol = 1e-12);

    double r_o() const { return r_o_; }
    const cheb::Series& w() const { return w_; }
    const cheb::Series& P() const { return P_; }
    const cheb::Series& dP() const { return dP_; }
    const cheb::Series& d2P() const { return d2P_; }

    /// Exactly round (w stored as the constant-1 profile).
    bool is_round() const { return round_; }

    double gauss_curvature(double x) const;

private:
    AxisymMetricSpec(double r_o, cheb::Series w, bool round_tag);

    double r_o_;
    bool round_;
    cheb::Series w_, P_, dP_, d2P_;
};

/// Constant positive mean curvature; tau = r_o H_o / 2 is the dimensionless
/// parameter every bound is phrased in.
struct MeanCurvatureSpec {
    double H_o;
    static MeanCurvatureSpec of(double H_o);
    double tau(double r_o) const { return 0.5 * r_o * H_o; }
};

struct HorizonSpec {
    double r_h;  // area radius of the interior horizon
    static HorizonSpec of(double r_h);
};

struct SurfaceData {
    double area;
    double r_o;
    double k_min;
    double k_max;
    double gauss_bonnet_residual;  // | int K dsigma - 4 pi |
};

/// Curvature extrema and the Gauss-Bonnet residual by Clenshaw-Curtis
/// quadrature at x_nodes points.
SurfaceData surface_data(const AxisymMetricSpec& g, std::size_t x_nodes = 257);

/// (r_o/2)(1 - tau^2)
double hawking_mass(const AxisymMetricSpec& g, const MeanCurvatureSpec& H);

/// (r_o/2)(1 + kappa^2 r_o^2 - tau^2), kappa > 0
double hyperbolic_hawking_mass(const AxisymMetricSpec& g, const MeanCurvatureSpec& H,
                               double kappa);

/// Surface of revolution (rho(x), z(x)) in R^3 inducing g. Requires K > 0.
class RevolutionProfile {
public:
    double rho(double x) const;
    double z(double x) const { return z_(x); }
    double z_prime(double x) const { return zp_(x); }

    /// Mean curvature (sum of principal curvatures) of the embedded surface.
    double mean_curvature(double x) const;

    /// max over interior nodes of |(rho'^2 + z'^2) - r_o^2/P| / (r_o^2/P),
    /// with z' re-derived from the z interpolant.
    double induced_metric_residual() const;

private:
    friend RevolutionProfile embed_revolution(const AxisymMetricSpec&, std::size_t);
    double r_o_ = 0.0;
    cheb::Series P_, dP_, d2P_;
    cheb::Series zp_, zpp_, z_;
    std::size_t nodes_ = 0;
};

RevolutionProfile embed_revolution(const AxisymMetricSpec& g, std::size_t x_nodes = 257);

struct BrownYorkReport {
    double m_by;         // (1/8pi) int (H_E - H_o) dsigma
    double m_h;          // Hawking mass term
    double middle_term;  // (1/8pi) int H_E dsigma - r_o, >= 0 for convex surfaces
    double last_term;    // (r_o/2)(1 - tau)^2
    double identity_residual;
};

BrownYorkReport brown_york_mass(const AxisymMetricSpec& g, const MeanCurvatureSpec& H,
                                std::size_t x_nodes = 257);

}  // namespace qlm
