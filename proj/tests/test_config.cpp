#include <cmath>

#include "doctest.h"
#include "qlm/config.hpp"
#include "qlm/driver.hpp"

using namespace qlm;
using nlohmann::json;

TEST_CASE("toml subset: sections, scalars, arrays, inline tables") {
    const std::string text = R"(
# a comment
H_o = 1.6            # trailing comment
pipeline = "flat"

[metric]
type = "axisym"
r_o = 1.0
w = { basis = "poly", data = [1.1, 0.0, -0.1] }

[collar]
m = -100.0
limit_mode = true

[grid]
x_nodes = 129
)";
    json j = toml_subset_to_json(text);
    CHECK(j["H_o"].get<double>() == 1.6);
    CHECK(j["pipeline"] == "flat");
    CHECK(j["metric"]["type"] == "axisym");
    CHECK(j["metric"]["w"]["basis"] == "poly");
    CHECK(j["metric"]["w"]["data"].size() == 3);
    CHECK(j["metric"]["w"]["data"][2].get<double>() == -0.1);
    CHECK(j["collar"]["limit_mode"] == true);
    CHECK(j["grid"]["x_nodes"].get<int>() == 129);

    auto cfg = run_config_from_json(j);
    CHECK(cfg.metric.r_o() == 1.0);
    CHECK(cfg.H.H_o == 1.6);
    CHECK(cfg.grid.x_nodes == 129);
    CHECK(cfg.collar.limit_mode);
}

TEST_CASE("json and toml configs produce the same run") {
    json jj = {
        {"metric", {{"type", "round"}, {"r_o", 2.0}}},
        {"H_o", 0.5},
        {"pipeline", "hyperbolic"},
        {"kappa", 0.25},
    };
    auto a = run_config_from_json(jj);

    const std::string toml = R"(
H_o = 0.5
pipeline = "hyperbolic"
kappa = 0.25
[metric]
type = "round"
r_o = 2.0
)";
    auto b = run_config_from_json(toml_subset_to_json(toml));
    CHECK(a.metric.r_o() == b.metric.r_o());
    CHECK(a.kappa == b.kappa);
    CHECK((a.pipeline == b.pipeline));
}

TEST_CASE("config validation errors") {
    json j = {{"metric", {{"type", "round"}, {"r_o", 1.0}}}, {"H_o", 1.0}};
    j["pipeline"] = "hyperbolic";  // kappa missing
    CHECK_THROWS(run_config_from_json(j));

    json j2 = {{"metric", {{"type", "bogus"}, {"r_o", 1.0}}}, {"H_o", 1.0}};
    CHECK_THROWS(run_config_from_json(j2));

    json j3 = {{"metric", {{"type", "round"}, {"r_o", 1.0}}}, {"H_o", -2.0}};
    CHECK_THROWS(run_config_from_json(j3));
}

TEST_CASE("pole tolerance override is honored") {
    // w(1) = 1 + 5e-10 fails the default gate but passes a loosened one
    nlohmann::json j = {
        {"metric",
         {{"type", "axisym"}, {"r_o", 1.0},
          {"w", {{"basis", "poly"}, {"data", {1.1 + 5e-10, 0.0, -0.1}}}}}},
        {"H_o", 1.0},
    };
    CHECK_THROWS(run_config_from_json(j));
    j["tolerances"] = {{"pole_regularity", 1e-8}};
    auto cfg = run_config_from_json(j);
    CHECK(cfg.tol.pole_regularity == 1e-8);

    j["tolerances"] = {{"ode_rtol", -1.0}};
    CHECK_THROWS(run_config_from_json(j));
}

TEST_CASE("metric from samples basis") {
    // samples of w = 1 + 0.1(1-x^2) on 33 Lobatto nodes
    auto xs = cheb::lobatto_nodes(33);
    std::vector<double> vals(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) vals[i] = 1.0 + 0.1 * (1.0 - xs[i] * xs[i]);
    json j = {{"type", "axisym"}, {"r_o", 1.0},
              {"w", {{"basis", "samples"}, {"data", vals}}}};
    auto g = metric_from_json(j);
    CHECK(g.gauss_curvature(0.0) == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("analyze: round flat report values") {
    json j = {
        {"metric", {{"type", "round"}, {"r_o", 1.0}}},
        {"H_o", 1.0},  // tau = 0.5
    };
    auto cfg = run_config_from_json(j);
    auto rep = analyze(cfg);
    REQUIRE(rep.flat.has_value());
    CHECK(rep.flat->theta == 1.0);
    CHECK(rep.flat->m_H == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(rep.flat->bartnik_bound == doctest::Approx(0.375).epsilon(1e-15));

    json out = report_to_json(rep);
    CHECK(out["schema_version"] == 1);
    CHECK(out["flat"]["m_H"]["value"].get<double>() == doctest::Approx(0.375));
    CHECK(out["flat"]["m_H"]["units"] == "L^1");
    CHECK(out["path"]["zeta_upper_bound"].get<double>() == 0.0);
}

TEST_CASE("analyze: hyperbolic pipeline emits xi and both bound lines") {
    json j = {
        {"metric",
         {{"type", "axisym"}, {"r_o", 1.0},
          {"w", {{"basis", "poly"}, {"data", {1.1, 0.0, -0.1}}}}}},
        {"H_o", 1.0},
        {"pipeline", "hyperbolic"},
        {"kappa", 0.5},
    };
    auto rep = analyze(run_config_from_json(j));
    REQUIRE(rep.hyp.has_value());
    REQUIRE(rep.xi.has_value());
    CHECK(rep.hyp->excess_exact <= rep.hyp->excess_weak + 1e-15);
    CHECK(rep.hyp->end_inequality_lhs >= 0.0);
    json out = report_to_json(rep);
    CHECK(out.contains("hyperbolic"));
    CHECK_FALSE(out.contains("flat"));
}

TEST_CASE("sweep: zeta = 0 row has theta identically 1") {
    SweepSpec spec;
    spec.axes.push_back(SweepAxis{"tau", 0.1, 0.9, 9});
    spec.quantities = {"theta", "m_H", "bartnik_bound"};
    auto result = run_sweep(spec, 1);
    REQUIRE(result.rows.size() == 9);
    for (const auto& row : result.rows) {
        CHECK(row[1] == "1");  // theta column, zeta defaults to 0
        CHECK(row.back().empty());
    }
}

TEST_CASE("sweep: bound surface is monotone in zeta along each tau row") {
    SweepSpec spec;
    spec.axes.push_back(SweepAxis{"tau", 0.2, 0.8, 4});
    spec.axes.push_back(SweepAxis{"zeta", 0.0, 2.0, 6});
    spec.quantities = {"bartnik_bound"};
    auto result = run_sweep(spec, 2);
    REQUIRE(result.rows.size() == 24);
    for (int t = 0; t < 4; ++t) {
        double prev = -1.0;
        for (int z = 0; z < 6; ++z) {
            double v = std::stod(result.rows[t * 6 + z][2]);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("sweep: small-tau bound column empties outside its domain") {
    SweepSpec spec;
    spec.axes.push_back(SweepAxis{"tau", 0.1, 2.0, 5});
    spec.fixed["zeta"] = 0.3;
    spec.quantities = {"small_tau_comparison_bound"};
    auto result = run_sweep(spec, 1);
    bool saw_empty = false, saw_value = false;
    for (const auto& row : result.rows) {
        if (row[1].empty()) {
            saw_empty = true;
            CHECK(row.back().find("small_tau_bound_undefined") != std::string::npos);
        } else {
            saw_value = true;
        }
    }
    CHECK(saw_empty);
    CHECK(saw_value);
}

TEST_CASE("sweep threading is deterministic") {
    SweepSpec spec;
    spec.axes.push_back(SweepAxis{"tau", 0.05, 0.95, 13});
    spec.axes.push_back(SweepAxis{"zeta", 0.0, 1.5, 11});
    spec.quantities = {"theta", "bartnik_bound", "positivity_bartnik_strict"};
    auto a = sweep_to_csv(run_sweep(spec, 1));
    auto b = sweep_to_csv(run_sweep(spec, 4));
    CHECK(a == b);
}
