#include "qlm/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qlm {

using nlohmann::json;

// ---------------------------------------------------------------------------
// TOML subset
// ---------------------------------------------------------------------------

namespace {

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Removes a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

json parse_toml_value(const std::string& raw);

json parse_toml_array(const std::string& inner) {
    json arr = json::array();
    std::string cur;
    int depth = 0;
    bool in_str = false;
    for (char ch : inner) {
        if (ch == '"') in_str = !in_str;
        if (!in_str && (ch == '[' || ch == '{')) ++depth;
        if (!in_str && (ch == ']' || ch == '}')) --depth;
        if (ch == ',' && depth == 0 && !in_str) {
            if (!strip(cur).empty()) arr.push_back(parse_toml_value(strip(cur)));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!strip(cur).empty()) arr.push_back(parse_toml_value(strip(cur)));
    return arr;
}

json parse_toml_inline_table(const std::string& inner) {
    json obj = json::object();
    std::string cur;
    int depth = 0;
    bool in_str = false;
    auto flush = [&]() {
        std::string kv = strip(cur);
        cur.clear();
        if (kv.empty()) return;
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("toml: malformed inline table entry '" + kv + "'");
        obj[strip(kv.substr(0, eq))] = parse_toml_value(strip(kv.substr(eq + 1)));
    };
    for (char ch : inner) {
        if (ch == '"') in_str = !in_str;
        if (!in_str && (ch == '[' || ch == '{')) ++depth;
        if (!in_str && (ch == ']' || ch == '}')) --depth;
        if (ch == ',' && depth == 0 && !in_str) {
            flush();
        } else {
            cur += ch;
        }
    }
    flush();
    return obj;
}

json parse_toml_value(const std::string& raw) {
    if (raw.empty()) throw std::runtime_error("toml: empty value");
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"')
            throw std::runtime_error("toml: unterminated string " + raw);
        return raw.substr(1, raw.size() - 2);
    }
    if (raw.front() == '[') {
        if (raw.back() != ']') throw std::runtime_error("toml: unterminated array " + raw);
        return parse_toml_array(raw.substr(1, raw.size() - 2));
    }
    if (raw.front() == '{') {
        if (raw.back() != '}') throw std::runtime_error("toml: unterminated table " + raw);
        return parse_toml_inline_table(raw.substr(1, raw.size() - 2));
    }
    if (raw == "true") return true;
    if (raw == "false") return false;
    try {
        std::size_t used = 0;
        double v = std::stod(raw, &used);
        if (used != raw.size()) throw std::runtime_error("trailing characters");
        double rounded;
        if (raw.find_first_of(".eE") == std::string::npos &&
            std::modf(v, &rounded) == 0.0 && std::fabs(v) < 9e15)
            return static_cast<std::int64_t>(v);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("toml: cannot parse value '" + raw + "'");
    }
}

}  // namespace

json toml_subset_to_json(const std::string& text) {
    json root = json::object();
    json* section = &root;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(strip_comment(line));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw std::runtime_error("toml: bad section header at line " +
                                         std::to_string(lineno));
            std::string name = strip(s.substr(1, s.size() - 2));
            section = &root;
            std::size_t pos = 0;
            while (pos != std::string::npos) {
                std::size_t dot = name.find('.', pos);
                std::string part = (dot == std::string::npos)
                                       ? name.substr(pos)
                                       : name.substr(pos, dot - pos);
                section = &((*section)[strip(part)]);
                pos = (dot == std::string::npos) ? std::string::npos : dot + 1;
            }
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("toml: expected key = value at line " +
                                     std::to_string(lineno));
        (*section)[strip(s.substr(0, eq))] = parse_toml_value(strip(s.substr(eq + 1)));
    }
    return root;
}

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.size() > 5 && path.substr(path.size() - 5) == ".toml")
        return toml_subset_to_json(buf.str());
    return json::parse(buf.str());
}

// ---------------------------------------------------------------------------
// Config objects
// ---------------------------------------------------------------------------

AxisymMetricSpec metric_from_json(const json& j, double pole_tol) {
    std::string type = j.at("type").get<std::string>();
    double r_o = j.at("r_o").get<double>();
    if (type == "round") return AxisymMetricSpec::round(r_o);
    if (type != "axisym")
        throw std::runtime_error("metric: unknown type '" + type + "'");

    const json& wj = j.at("w");
    std::string basis = wj.at("basis").get<std::string>();
    auto data = wj.at("data").get<std::vector<double>>();
    cheb::Series w;
    if (basis == "poly") {
        w = cheb::Series::from_monomial(data);
    } else if (basis == "samples") {
        w = cheb::Series::from_samples(data);
    } else {
        throw std::runtime_error("metric: unknown basis '" + basis + "'");
    }
    return AxisymMetricSpec::from_profile(r_o, std::move(w), pole_tol);
}

namespace {

PathFamily family_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "linear") return PathFamily::linear();
        throw std::runtime_error("paths: unknown family '" + j.get<std::string>() + "'");
    }
    if (j.is_object() && j.contains("reparam_grid"))
        return PathFamily::with_reparam(j.at("reparam_grid").get<std::size_t>());
    throw std::runtime_error("paths: expected \"linear\" or {reparam_grid: N}");
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
    ToleranceConfig tol;
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        tol.pole_regularity = t.value("pole_regularity", tol.pole_regularity);
        tol.root_residual = t.value("root_residual", tol.root_residual);
        tol.ode_rtol = t.value("ode_rtol", tol.ode_rtol);
        tol.ode_atol = t.value("ode_atol", tol.ode_atol);
        tol.slice_consistency = t.value("slice_consistency", tol.slice_consistency);
        tol.curvature_floor_slack =
            t.value("curvature_floor_slack", tol.curvature_floor_slack);
        if (tol.pole_regularity <= 0.0 || tol.root_residual <= 0.0 || tol.ode_rtol <= 0.0 ||
            tol.ode_atol <= 0.0 || tol.slice_consistency <= 0.0 ||
            tol.curvature_floor_slack <= 0.0)
            throw std::runtime_error("config: tolerances must be positive");
    }

    RunConfig cfg{.metric = metric_from_json(j.at("metric"), tol.pole_regularity),
                  .H = MeanCurvatureSpec::of(j.at("H_o").get<double>()),
                  .pipeline = Pipeline::Flat,
                  .kappa = 0.0,
                  .horizon = {},
                  .family = {},
                  .collar = {},
                  .grid = {},
                  .tol = {},
                  .output = {}};

    std::string pipe = j.value("pipeline", std::string("flat"));
    if (pipe == "flat") {
        cfg.pipeline = Pipeline::Flat;
    } else if (pipe == "hyperbolic") {
        cfg.pipeline = Pipeline::Hyperbolic;
        if (!j.contains("kappa"))
            throw std::runtime_error("config: hyperbolic pipeline requires kappa");
        cfg.kappa = j.at("kappa").get<double>();
        if (!(cfg.kappa > 0.0)) throw std::runtime_error("config: kappa must be positive");
    } else {
        throw std::runtime_error("config: unknown pipeline '" + pipe + "'");
    }

    if (j.contains("horizon"))
        cfg.horizon = HorizonSpec::of(j.at("horizon").at("r_h").get<double>());
    if (j.contains("paths")) cfg.family = family_from_json(j.at("paths"));

    if (j.contains("collar")) {
        const json& c = j.at("collar");
        cfg.collar.m = c.value("m", cfg.collar.m);
        if (c.contains("A_scale")) cfg.collar.A_scale = c.at("A_scale").get<double>();
        if (c.contains("A_override")) cfg.collar.A_override = c.at("A_override").get<double>();
        cfg.collar.limit_mode = c.value("limit_mode", false);
        cfg.collar.j_lo = c.value("j_lo", cfg.collar.j_lo);
        cfg.collar.j_hi = c.value("j_hi", cfg.collar.j_hi);
    }
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        cfg.grid.x_nodes = g.value("x_nodes", cfg.grid.x_nodes);
        cfg.grid.t_samples = g.value("t_samples", cfg.grid.t_samples);
        if (cfg.grid.x_nodes < 8 || cfg.grid.t_samples < 2)
            throw std::runtime_error("config: grid too small");
    }
    cfg.tol = tol;
    cfg.output = j.value("output", std::string{});
    return cfg;
}

SweepSpec sweep_spec_from_json(const json& j) {
    SweepSpec spec;
    for (const auto& a : j.at("axes")) {
        SweepAxis ax;
        ax.name = a.at("name").get<std::string>();
        ax.min = a.at("min").get<double>();
        ax.max = a.at("max").get<double>();
        ax.count = a.at("count").get<std::size_t>();
        if (ax.count < 1) throw std::runtime_error("sweep: axis count must be >= 1");
        if (ax.name != "tau" && ax.name != "zeta" && ax.name != "kappa_r_o" &&
            ax.name != "r_h_over_r_o")
            throw std::runtime_error("sweep: unknown axis '" + ax.name + "'");
        spec.axes.push_back(ax);
    }
    if (spec.axes.empty()) throw std::runtime_error("sweep: need at least one axis");
    if (j.contains("fixed"))
        for (auto it = j.at("fixed").begin(); it != j.at("fixed").end(); ++it)
            spec.fixed[it.key()] = it.value().get<double>();
    spec.quantities = j.at("quantities").get<std::vector<std::string>>();
    if (spec.quantities.empty()) throw std::runtime_error("sweep: empty quantity list");
    spec.output = j.value("output", std::string{});
    return spec;
}

RunConfig load_run_config(const std::string& path) {
    return run_config_from_json(load_config_file(path));
}

SweepSpec load_sweep_spec(const std::string& path) {
    return sweep_spec_from_json(load_config_file(path));
}

}  // namespace qlm
