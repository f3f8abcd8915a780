#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qlm/collar.hpp"
#include "qlm/config.hpp"
#include "qlm/mass_bounds.hpp"

namespace qlm {

/// Minimum over the searched path family of the xi constant: when the input
/// curvature dips nonpositive every candidate lands on the closed-form branch;
/// with positive curvature each candidate contributes its Psi root.
XiResult xi_upper_bound(const AxisymMetricSpec& g, const MeanCurvatureSpec& H, double kappa,
                        PathFamily family, PathGrid grid = {});

struct MassReport {
    // inputs
    double r_o;
    double H_o;
    double tau;
    Pipeline pipeline;
    double kappa = 0.0;
    std::optional<double> r_h;
    SurfaceData surface{};

    ZetaEstimate zeta;

    std::optional<FlatBounds> flat;
    std::optional<HorizonPositivity> horizon_positivity;
    std::optional<BartnikPositivity> bartnik_positivity;
    std::optional<double> small_tau_bound;

    std::optional<XiResult> xi;
    std::optional<HyperbolicBounds> hyp;

    std::optional<BrownYorkReport> brown_york;

    GridConfig grid;
    ToleranceConfig tol;
};

MassReport analyze(const RunConfig& cfg);
nlohmann::json report_to_json(const MassReport& rep);

struct CollarRunReport {
    double m;
    double k;
    double A_used;
    AChoice choice;
    double floor;
    CurvatureCertificate cert;
    CurvatureCertificate cert_doubled;
    bool breach;
    std::vector<SliceReport> slices;
    double worst_slice_consistency;
    std::optional<LimitStudy> limits;
    GridConfig grid;
    ToleranceConfig tol;
};

CollarRunReport run_collar(const RunConfig& cfg);
nlohmann::json collar_report_to_json(const CollarRunReport& rep);

struct SweepResult {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // already formatted fields
};

SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 1);
std::string sweep_to_csv(const SweepResult& result);

/// Write-to-temp then rename; no partial files on failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace qlm
