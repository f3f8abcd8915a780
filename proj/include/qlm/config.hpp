#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qlm/metric_paths.hpp"

namespace qlm {

struct GridConfig {
    std::size_t x_nodes = 257;
    std::size_t t_samples = 101;
};

struct ToleranceConfig {
    double pole_regularity = 1e-12;
    double root_residual = 1e-12;
    double ode_rtol = 1e-12;
    double ode_atol = 1e-14;
    double slice_consistency = 1e-9;
    double curvature_floor_slack = 1e-10;
};

struct CollarConfig {
    double m = -100.0;
    std::optional<double> A_scale;     // multiply the selected A_o
    std::optional<double> A_override;  // absolute A, takes precedence
    bool limit_mode = false;
    int j_lo = 2;
    int j_hi = 8;
};

struct RunConfig {
    AxisymMetricSpec metric;
    MeanCurvatureSpec H;
    Pipeline pipeline = Pipeline::Flat;
    double kappa = 0.0;  // used iff hyperbolic
    std::optional<HorizonSpec> horizon;
    PathFamily family;
    CollarConfig collar;
    GridConfig grid;
    ToleranceConfig tol;
    std::string output;  // empty: stdout
};

struct SweepAxis {
    std::string name;  // tau | zeta | kappa_r_o | r_h_over_r_o
    double min = 0.0;
    double max = 1.0;
    std::size_t count = 2;
};

struct SweepSpec {
    std::vector<SweepAxis> axes;
    std::map<std::string, double> fixed;
    std::vector<std::string> quantities;
    std::string output;
};

/// Minimal TOML reader covering the config surface: [section] headers,
/// key = string | number | boolean | single-line array | inline table,
/// and # comments. Returns the equivalent JSON document.
nlohmann::json toml_subset_to_json(const std::string& text);

/// Dispatches on extension: .toml via the subset reader, anything else JSON.
nlohmann::json load_config_file(const std::string& path);

RunConfig run_config_from_json(const nlohmann::json& j);
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

RunConfig load_run_config(const std::string& path);
SweepSpec load_sweep_spec(const std::string& path);

/// Metric sub-document: {"type": "round", "r_o": 1.0} or
/// {"type": "axisym", "r_o": 1.0, "w": {"basis": "poly"|"samples", "data": [...]}}.
AxisymMetricSpec metric_from_json(const nlohmann::json& j, double pole_tol = 1e-12);

}  // namespace qlm
