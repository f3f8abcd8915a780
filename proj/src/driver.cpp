#include "qlm/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

#include "qlm/errors.hpp"

namespace qlm {

using nlohmann::json;

namespace {

json quantity(double value, const char* units) {
    return json{{"value", value}, {"units", units}};
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

XiResult xi_upper_bound(const AxisymMetricSpec& g, const MeanCurvatureSpec& H, double kappa,
                        PathFamily family, PathGrid grid) {
    const double r_o = g.r_o();
    const double tau = H.tau(r_o);

    std::vector<TimeMap> candidates{TimeMap{}};
    for (std::size_t i = 0; i < family.reparam_grid; ++i) {
        double c = -0.9 + 1.8 * static_cast<double>(i + 1) /
                              static_cast<double>(family.reparam_grid + 1);
        candidates.push_back(TimeMap{c});
    }

    std::optional<XiResult> best;
    for (const auto& map : candidates) {
        PathConstants c = path_constants(TraceFreePath(g, map), grid);
        if (!(c.beta > -3.0 * kappa * kappa * r_o * r_o)) continue;
        if (c.alpha == 0.0)
            return XiResult{0.0, 0.0, XiBranch::BetaNonpositiveClosedForm, {}};
        XiResult r = xi_root(c.alpha, c.beta, tau, kappa, r_o);
        if (!best || r.xi < best->xi) best = r;
    }
    if (!best)
        throw AdmissibilityError("curvature_floor_violated",
                                 "no admissible path for the hyperbolic pipeline");
    return *best;
}

MassReport analyze(const RunConfig& cfg) {
    MassReport rep;
    rep.r_o = cfg.metric.r_o();
    rep.H_o = cfg.H.H_o;
    rep.tau = cfg.H.tau(rep.r_o);
    rep.pipeline = cfg.pipeline;
    rep.kappa = cfg.kappa;
    if (cfg.horizon) rep.r_h = cfg.horizon->r_h;
    rep.grid = cfg.grid;
    rep.tol = cfg.tol;

    rep.surface = surface_data(cfg.metric, cfg.grid.x_nodes);
    PathGrid pgrid{cfg.grid.t_samples, cfg.grid.x_nodes};

    if (cfg.pipeline == Pipeline::Flat) {
        rep.zeta = zeta_upper_bound(cfg.metric, cfg.family, pgrid);
        rep.flat = flat_mass_bounds(cfg.metric, cfg.H, rep.zeta, cfg.horizon);
        if (cfg.horizon && cfg.horizon->r_h <= rep.r_o)
            rep.horizon_positivity = positivity_from_horizon(rep.zeta.value, cfg.horizon->r_h, rep.r_o);
        if (rep.flat->bartnik_bound > 0.0)
            rep.bartnik_positivity = positivity_from_bartnik_bound(rep.zeta.value, rep.flat->bartnik_bound, rep.r_o);
        rep.small_tau_bound = small_tau_comparison(rep.zeta.best_constants.alpha,
                                   rep.zeta.best_constants.beta, rep.tau, rep.flat->m_H);
        if (rep.surface.k_min > 0.0)
            rep.brown_york = brown_york_mass(cfg.metric, cfg.H, cfg.grid.x_nodes);
    } else {
        rep.zeta = zeta_kappa_upper_bound(cfg.metric, cfg.kappa, cfg.family, pgrid);
        rep.xi = xi_upper_bound(cfg.metric, cfg.H, cfg.kappa, cfg.family, pgrid);
        rep.hyp = hyperbolic_mass_bounds(cfg.metric, cfg.H, cfg.kappa, *rep.xi, cfg.horizon);
    }
    return rep;
}

json report_to_json(const MassReport& rep) {
    json j;
    j["schema_version"] = 1;
    j["inputs"] = {
        {"r_o", quantity(rep.r_o, "L^1")},
        {"H_o", quantity(rep.H_o, "L^-1")},
        {"tau", rep.tau},
        {"pipeline", rep.pipeline == Pipeline::Flat ? "flat" : "hyperbolic"},
    };
    if (rep.pipeline == Pipeline::Hyperbolic)
        j["inputs"]["kappa"] = quantity(rep.kappa, "L^-1");
    if (rep.r_h) j["inputs"]["r_h"] = quantity(*rep.r_h, "L^1");

    j["surface"] = {
        {"area", quantity(rep.surface.area, "L^2")},
        {"K_min", quantity(rep.surface.k_min, "L^-2")},
        {"K_max", quantity(rep.surface.k_max, "L^-2")},
        {"gauss_bonnet_residual", rep.surface.gauss_bonnet_residual},
    };

    j["path"] = {
        {"family", rep.zeta.family},
        {"alpha", rep.zeta.best_constants.alpha},
        {"beta", rep.zeta.best_constants.beta},
        {"zeta_upper_bound", rep.zeta.value},
        {"certified", "upper_bound"},
    };

    if (rep.flat) {
        const auto& b = *rep.flat;
        json f = {
            {"theta", b.theta},
            {"m_H", quantity(b.m_H, "L^1")},
            {"bartnik_upper_bound", quantity(b.bartnik_bound, "L^1")},
            {"bartnik_upper_bound_weak", quantity(b.bartnik_bound_weak, "L^1")},
            {"bartnik_upper_bound_ratio_form", quantity(b.bartnik_bound_ratio, "L^1")},
            {"tau_le_theta", b.holds_tau_le_theta},
            {"tau_le_theta_margin", b.margin_tau},
            {"hawking_lower_bound", quantity(b.hawking_lower, "L^1")},
        };
        if (b.holds_horizon) {
            f["horizon_inequality"] = *b.holds_horizon;
            f["horizon_inequality_margin"] = *b.margin_horizon;
        }
        j["flat"] = f;
    }
    if (rep.horizon_positivity)
        j["flat"]["positivity_horizon"] = {{"positive", rep.horizon_positivity->positive},
                                           {"zeta", rep.horizon_positivity->zeta},
                                           {"threshold", rep.horizon_positivity->threshold}};
    if (rep.bartnik_positivity)
        j["flat"]["positivity_bartnik"] = {
            {"lambda", rep.bartnik_positivity->lambda},
            {"strict_threshold", rep.bartnik_positivity->strict_threshold},
            {"relaxed_threshold", rep.bartnik_positivity->relaxed_threshold},
            {"strict_positive", rep.bartnik_positivity->strict_positive},
            {"relaxed_positive", rep.bartnik_positivity->relaxed_positive}};
    if (rep.small_tau_bound)
        j["flat"]["small_tau_comparison_bound"] = quantity(*rep.small_tau_bound, "L^1");
    else if (rep.flat)
        j["flat"]["small_tau_comparison_bound"] = nullptr;

    if (rep.hyp) {
        const auto& h = *rep.hyp;
        json hj = {
            {"kappa", quantity(h.kappa, "L^-1")},
            {"xi", h.xi},
            {"m_H_hyperbolic", quantity(h.m_H_hyp, "L^1")},
            {"bartnik_upper_bound_exact", quantity(h.bound_exact, "L^1")},
            {"bartnik_upper_bound_weak", quantity(h.bound_weak, "L^1")},
            {"excess_exact", quantity(h.excess_exact, "L^1")},
            {"excess_weak", quantity(h.excess_weak, "L^1")},
            {"end_inequality_lhs", quantity(h.end_inequality_lhs, "L^1")},
            {"end_inequality_nonnegative", h.end_inequality_lhs >= 0.0},
        };
        if (h.theta_kappa) hj["theta_kappa"] = *h.theta_kappa;
        if (h.penrose_test_margin) {
            hj["penrose_test_margin"] = quantity(*h.penrose_test_margin, "L^1");
            hj["penrose_test_holds"] = *h.penrose_test_margin >= 0.0;
        }
        j["hyperbolic"] = hj;
    }

    if (rep.brown_york) {
        const auto& by = *rep.brown_york;
        j["brown_york"] = {
            {"m_BY", quantity(by.m_by, "L^1")},
            {"m_H", quantity(by.m_h, "L^1")},
            {"middle_term", quantity(by.middle_term, "L^1")},
            {"last_term", quantity(by.last_term, "L^1")},
            {"identity_residual", by.identity_residual},
            {"middle_term_nonnegative", by.middle_term >= -1e-10},
        };
    }

    j["grid"] = {{"x_nodes", rep.grid.x_nodes}, {"t_samples", rep.grid.t_samples}};
    j["tolerances"] = {
        {"pole_regularity", rep.tol.pole_regularity},
        {"root_residual", rep.tol.root_residual},
        {"ode_rtol", rep.tol.ode_rtol},
        {"ode_atol", rep.tol.ode_atol},
        {"slice_consistency", rep.tol.slice_consistency},
        {"curvature_floor_slack", rep.tol.curvature_floor_slack},
    };
    return j;
}

// ---------------------------------------------------------------------------
// collar run
// ---------------------------------------------------------------------------

CollarRunReport run_collar(const RunConfig& cfg) {
    PathGrid pgrid{cfg.grid.t_samples, cfg.grid.x_nodes};

    ZetaEstimate z = (cfg.pipeline == Pipeline::Flat)
                         ? zeta_upper_bound(cfg.metric, cfg.family, pgrid)
                         : zeta_kappa_upper_bound(cfg.metric, cfg.kappa, cfg.family, pgrid);
    TraceFreePath path(cfg.metric, z.best_map);

    CollarRunReport rep;
    rep.grid = cfg.grid;
    rep.tol = cfg.tol;
    rep.m = cfg.collar.m;

    OdeTol ode{cfg.tol.ode_rtol, cfg.tol.ode_atol};
    if (cfg.collar.limit_mode) {
        auto ms = default_m_sequence(cfg.collar.j_lo, cfg.collar.j_hi);
        rep.limits = limit_study(z.best_constants, cfg.H.tau(cfg.metric.r_o()),
                                 cfg.metric.r_o(), cfg.pipeline, cfg.kappa, ms, ode);
    }

    auto probe = CollarMetric::assemble(path, z.best_constants, cfg.H, cfg.collar.m,
                                        cfg.pipeline, cfg.kappa, {}, ode);
    std::optional<double> A_override;
    if (cfg.collar.A_override)
        A_override = *cfg.collar.A_override;
    else if (cfg.collar.A_scale)
        A_override = *cfg.collar.A_scale * probe.choice().A_o;

    auto collar = A_override ? CollarMetric::assemble(path, z.best_constants, cfg.H,
                                                      cfg.collar.m, cfg.pipeline, cfg.kappa,
                                                      A_override, ode)
                             : std::move(probe);

    rep.k = collar.k();
    rep.A_used = collar.A();
    rep.choice = collar.choice();
    CollarGrid cg{cfg.grid.t_samples, cfg.grid.x_nodes};
    rep.cert = collar.curvature_certificate(cg);
    rep.cert_doubled =
        collar.curvature_certificate(CollarGrid{2 * cfg.grid.t_samples - 1, 2 * cfg.grid.x_nodes - 1});
    rep.floor = rep.cert.floor;
    rep.breach = std::min(rep.cert.min_R, rep.cert_doubled.min_R) <
                 rep.floor - cfg.tol.curvature_floor_slack;

    rep.worst_slice_consistency = 0.0;
    for (int i = 0; i <= 10; ++i) {
        auto s = collar.slice_report(0.1 * i);
        rep.worst_slice_consistency = std::max(rep.worst_slice_consistency, s.mass_consistency);
        rep.slices.push_back(s);
    }
    return rep;
}

json collar_report_to_json(const CollarRunReport& rep) {
    json j;
    j["schema_version"] = 1;
    j["m"] = quantity(rep.m, "L^1");
    j["k"] = rep.k;
    j["A_used"] = quantity(rep.A_used, "L^1");
    j["A_o"] = {
        {"value", rep.choice.A_o},
        {"units", "L^1"},
        {"residual", rep.choice.residual},
        {"lower_bound", rep.choice.lower_bound},
    };
    if (rep.choice.upper_bound) j["A_o"]["upper_bound"] = *rep.choice.upper_bound;

    auto cert_json = [](const CurvatureCertificate& c) {
        return json{{"min_R", c.min_R},
                    {"floor", c.floor},
                    {"t_min", c.t_min},
                    {"x_min", c.x_min},
                    {"t_samples", c.t_samples},
                    {"x_nodes", c.x_nodes}};
    };
    j["certificate"] = cert_json(rep.cert);
    j["certificate_doubled_grid"] = cert_json(rep.cert_doubled);
    j["breach"] = rep.breach;

    json slices = json::array();
    for (const auto& s : rep.slices)
        slices.push_back({{"t", s.t},
                          {"area", quantity(s.area, "L^2")},
                          {"H_t", quantity(s.mean_curvature, "L^-1")},
                          {"mass_formula", quantity(s.mass_formula, "L^1")},
                          {"mass_direct", quantity(s.mass_direct, "L^1")},
                          {"consistency", s.mass_consistency},
                          {"min_R_on_slice", s.min_R}});
    j["slices"] = slices;
    j["worst_slice_consistency"] = rep.worst_slice_consistency;

    if (rep.limits) {
        json rows = json::array();
        for (const auto& r : rep.limits->rows)
            rows.push_back({{"m", r.m},
                            {"k", r.k},
                            {"A_o", r.A_o},
                            {"u_at_Ak", r.u_at_Ak},
                            {"mass_slice1", r.mass_slice1},
                            {"dev_u", r.dev_u},
                            {"dev_A", r.dev_A},
                            {"dev_mass", r.dev_mass}});
        j["limit_study"] = {{"rows", rows},
                            {"u_limit", rep.limits->u_limit},
                            {"A_limit", rep.limits->A_limit},
                            {"mass_limit", rep.limits->mass_limit},
                            {"root", rep.limits->root}};
    }
    j["grid"] = {{"x_nodes", rep.grid.x_nodes}, {"t_samples", rep.grid.t_samples}};
    return j;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

namespace {

struct CellInput {
    double tau = 0.5;
    double zeta = 0.0;
    double kappa_r_o = 0.0;
    std::optional<double> r_h_over_r_o;
};

struct CellOutput {
    std::vector<std::string> fields;
    std::vector<std::string> reasons;
};

// Sweeps are dimensionless: r_o = 1, H_o = 2 tau, and the zeta axis is
// represented by the canonical constants (alpha, beta) = (2 zeta^2, 1).
CellOutput evaluate_cell(const CellInput& in, const std::vector<std::string>& quantities) {
    CellOutput out;
    const double r_o = 1.0;
    const double tau = in.tau;
    const double zeta = in.zeta;
    const double alpha = 2.0 * zeta * zeta;
    const double beta = 1.0;
    const double kappa = in.kappa_r_o / r_o;
    const double m_H = 0.5 * r_o * (1.0 - tau * tau);

    ThetaResult th = theta_root(tau, zeta);
    std::optional<XiResult> xi;
    if (kappa > 0.0 && alpha > 0.0)
        xi = xi_root(alpha, beta, tau, kappa, r_o);
    else if (kappa > 0.0)
        xi = XiResult{0.0, 0.0, XiBranch::BetaNonpositiveClosedForm, {}};

    auto emit = [&](const std::string& name) -> std::string {
        if (name == "theta") return fmt17(th.theta);
        if (name == "m_H") return fmt17(m_H);
        if (name == "bartnik_bound")
            return fmt17(0.5 * r_o * (th.theta * th.theta - tau * tau));
        if (name == "bartnik_bound_weak")
            return fmt17(1.5 * r_o * (1.0 + 0.75 * tau * zeta) * tau * zeta + m_H);
        if (name == "hawking_lower") {
            if (in.r_h_over_r_o)
                return fmt17(0.5 * r_o * (1.0 + *in.r_h_over_r_o - th.theta * th.theta));
            return fmt17(0.5 * r_o * (1.0 - th.theta * th.theta));
        }
        if (name == "positivity_horizon") {
            if (!in.r_h_over_r_o) {
                out.reasons.push_back("needs_r_h");
                return "";
            }
            auto v = positivity_from_horizon(zeta, *in.r_h_over_r_o * r_o, r_o);
            return v.positive ? "1" : "0";
        }
        if (name == "positivity_bartnik_strict" || name == "positivity_bartnik_relaxed") {
            double bound = 0.5 * r_o * (th.theta * th.theta - tau * tau);
            if (!(bound > 0.0)) {
                out.reasons.push_back("needs_positive_bound");
                return "";
            }
            auto v = positivity_from_bartnik_bound(zeta, bound, r_o);
            bool verdict = (name == "positivity_bartnik_strict") ? v.strict_positive : v.relaxed_positive;
            return verdict ? "1" : "0";
        }
        if (name == "small_tau_comparison_bound") {
            auto v = small_tau_comparison(alpha, beta, tau, m_H);
            if (!v) {
                out.reasons.push_back("small_tau_bound_undefined");
                return "";
            }
            return fmt17(*v);
        }
        if (name == "xi" || name == "theta_kappa" || name == "m_H_hyp" ||
            name == "hyp_bound_exact" || name == "hyp_bound_weak" ||
            name == "penrose_test_lhs") {
            if (!(kappa > 0.0)) {
                out.reasons.push_back("flat_pipeline");
                return "";
            }
            double kr2 = kappa * kappa * r_o * r_o;
            double m_H_hyp = 0.5 * r_o * (1.0 + kr2 - tau * tau);
            double tx = tau * xi->xi;
            double base = 1.0 + 1.5 * tx;
            double excess =
                0.5 * r_o * (kr2 * base * base + std::pow(base, 2.0 / 3.0) - kr2 - 1.0);
            if (name == "xi") return fmt17(xi->xi);
            if (name == "theta_kappa") {
                if (!xi->theta_kappa) {
                    out.reasons.push_back("theta_kappa_requires_beta_positive");
                    return "";
                }
                return fmt17(*xi->theta_kappa);
            }
            if (name == "m_H_hyp") return fmt17(m_H_hyp);
            if (name == "hyp_bound_exact") return fmt17(m_H_hyp + excess);
            if (name == "hyp_bound_weak")
                return fmt17(m_H_hyp +
                             0.5 * r_o * (3.0 * kr2 + 1.0) * (1.0 + 0.75 * tx) * tx);
            // penrose_test_lhs
            return fmt17(m_H_hyp + excess);
        }
        throw std::runtime_error("sweep: unknown quantity '" + name + "'");
    };

    for (const auto& q : quantities) out.fields.push_back(emit(q));
    return out;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
    SweepResult result;
    for (const auto& a : spec.axes) result.header.push_back(a.name);
    for (const auto& q : spec.quantities) result.header.push_back(q);
    result.header.push_back("reason");

    std::size_t total = 1;
    for (const auto& a : spec.axes) total *= a.count;
    result.rows.resize(total);

    auto cell_input = [&](std::size_t flat_index, std::vector<double>& axis_vals) {
        CellInput in;
        if (auto it = spec.fixed.find("tau"); it != spec.fixed.end()) in.tau = it->second;
        if (auto it = spec.fixed.find("zeta"); it != spec.fixed.end()) in.zeta = it->second;
        if (auto it = spec.fixed.find("kappa_r_o"); it != spec.fixed.end())
            in.kappa_r_o = it->second;
        if (auto it = spec.fixed.find("r_h_over_r_o"); it != spec.fixed.end())
            in.r_h_over_r_o = it->second;

        // row-major (lexicographic) order over axis indices
        std::size_t rem = flat_index;
        axis_vals.clear();
        for (std::size_t ai = spec.axes.size(); ai-- > 0;) {
            const auto& ax = spec.axes[ai];
            std::size_t idx = rem % ax.count;
            rem /= ax.count;
            double v = (ax.count == 1)
                           ? ax.min
                           : ax.min + (ax.max - ax.min) * static_cast<double>(idx) /
                                          static_cast<double>(ax.count - 1);
            axis_vals.push_back(v);
            if (ax.name == "tau") in.tau = v;
            if (ax.name == "zeta") in.zeta = v;
            if (ax.name == "kappa_r_o") in.kappa_r_o = v;
            if (ax.name == "r_h_over_r_o") in.r_h_over_r_o = v;
        }
        std::reverse(axis_vals.begin(), axis_vals.end());
        return in;
    };

    auto work = [&](std::size_t begin, std::size_t end) {
        std::vector<double> axis_vals;
        for (std::size_t i = begin; i < end; ++i) {
            CellInput in = cell_input(i, axis_vals);
            std::vector<std::string> row;
            for (double v : axis_vals) row.push_back(fmt17(v));
            try {
                CellOutput out = evaluate_cell(in, spec.quantities);
                row.insert(row.end(), out.fields.begin(), out.fields.end());
                std::string reason;
                for (const auto& r : out.reasons) {
                    if (!reason.empty()) reason += ";";
                    reason += r;
                }
                row.push_back(reason);
            } catch (const std::exception& e) {
                for (std::size_t q = 0; q < spec.quantities.size(); ++q) row.push_back("");
                row.push_back(std::string("error:") + e.what());
            }
            result.rows[i] = std::move(row);
        }
    };

    threads = std::max(1u, threads);
    if (threads == 1 || total < 2 * threads) {
        work(0, total);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (total + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t b = t * chunk;
            std::size_t e = std::min(total, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return result;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::string csv = "# schema_version 1\n";
    for (std::size_t i = 0; i < result.header.size(); ++i) {
        if (i) csv += ",";
        csv += result.header[i];
    }
    csv += "\n";
    for (const auto& row : result.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) csv += ",";
            csv += row[i];
        }
        csv += "\n";
    }
    return csv;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace qlm
