#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qlm/metric_paths.hpp"
#include "qlm/warp_odes.hpp"

namespace qlm {

struct CollarGrid {
    std::size_t t_samples = 101;
    std::size_t x_nodes = 257;
};

/// k = tau (1 - 2m/r_o)^{-1/2}, or with + kappa^2 r_o^2 inside the radical.
double collar_k(double tau, double m, double r_o, double kappa = 0.0);

/// Warp amplitude selection. The residual is the defining equation evaluated
/// at A_o; lower_bound (and upper_bound, hyperbolic beta > 0) are the proven
/// a-priori brackets A_o must respect.
struct AChoice {
    double A_o;
    double residual;
    double lower_bound;
    std::optional<double> upper_bound;
};

/// Smallest A with beta - k^2 - (alpha/2) A^{-2} u_m^2(A k) = 0. Requires
/// beta > (1 + alpha/2) k^2; throws AdmissibilityError("k2_exceeds_beta_margin").
AChoice choose_A_flat(const PathConstants& c, const WarpParams& p, double k,
                      OdeTol ode = {});

/// beta > 0: unique root of (beta - k^2) + [3 kappa^2 (1-k^2) - (alpha/2) A^{-2}]
/// u_m^2(A k) = 0, requires k^2 < beta. beta <= 0: closed form, requires
/// beta + 3 kappa^2 r_o^2 > (1 + 3 kappa^2 r_o^2) k^2.
AChoice choose_A_hyperbolic(const PathConstants& c, const WarpParams& p, double k,
                            double kappa, OdeTol ode = {});

struct SliceReport {
    double t;
    double area;
    double mean_curvature;   // H_t = 2 k u'/u, constant on the slice
    double mass_formula;     // collar slice formula
    double mass_direct;      // from (area, H_t) via the Hawking mass definition
    double mass_consistency; // |formula - direct|
    double min_R;            // min over x of R(gamma) on the slice
};

struct CurvatureCertificate {
    double min_R;
    double floor;  // 0 (flat) or -6 kappa^2
    double t_min, x_min;
    std::size_t t_samples, x_nodes;
};

/// gamma^(m) = A^2 dt^2 + r_o^{-2} u_m^2(A k t) g(t) on [0,1] x S^2.
class CollarMetric {
public:
    static CollarMetric assemble(TraceFreePath path, const PathConstants& consts,
                                 const MeanCurvatureSpec& H, double m, Pipeline pipeline,
                                 double kappa = 0.0,
                                 std::optional<double> A_override = {}, OdeTol ode = {});

    double A() const { return A_; }
    double k() const { return k_; }
    double m() const { return m_; }
    double tau() const { return tau_; }
    double kappa() const { return kappa_; }
    Pipeline pipeline() const { return pipeline_; }
    const AChoice& choice() const { return choice_; }
    const PathConstants& constants() const { return consts_; }
    const TraceFreePath& path() const { return path_; }
    const WarpFunction& warp() const { return warp_; }

    double scalar_curvature(double t, double x) const;

    CurvatureCertificate curvature_certificate(CollarGrid grid = {}) const;

    SliceReport slice_report(double t) const;

private:
    CollarMetric(TraceFreePath path, PathConstants consts, WarpFunction warp, double tau,
                 double m, double k, double A, Pipeline pipe, double kappa, AChoice choice);

    TraceFreePath path_;
    PathConstants consts_;
    WarpFunction warp_;
    double tau_, m_, k_, A_;
    Pipeline pipeline_;
    double kappa_;
    AChoice choice_;
};

struct LimitRow {
    double m;
    double k;
    double A_o;
    double u_at_Ak;
    double mass_slice1;
    double dev_u;     // |u / u_limit - 1|
    double dev_A;     // |A_o / A_limit - 1|
    double dev_mass;  // |mass / mass_limit - 1|
};

struct LimitStudy {
    std::vector<LimitRow> rows;
    double u_limit;
    double A_limit;
    double mass_limit;
    double root;  // theta (flat) or xi (hyperbolic)
};

/// m -> -infinity behaviour of (A_o, u_m(A_o k), mass of the far slice)
/// against the closed-form limits. Flat rows use the exact implicit profile,
/// so arbitrarily negative m stays well conditioned.
LimitStudy limit_study(const PathConstants& consts, double tau, double r_o,
                       Pipeline pipeline, double kappa, std::span<const double> m_seq,
                       OdeTol ode = {});

/// Default m-sequence -10^j for j in [j_lo, j_hi].
std::vector<double> default_m_sequence(int j_lo = 2, int j_hi = 8);

}  // namespace qlm
