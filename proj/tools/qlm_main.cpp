// qlm — Hawking/Bartnik mass bounds for CMC spheres via collar extensions.
//
// Subcommands:
//   qlm analyze <config>   full report (JSON)
//   qlm collar  <config>   collar verification: A_o, min-R certificate, slices
//   qlm sweep   <spec>     parameter sweep (CSV)
//   qlm selftest           run the acceptance suite
//
// Exit codes: 0 success, 1 I/O or parse error, 2 admissibility failure,
// 3 scalar-curvature floor breached in `collar`.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qlm/driver.hpp"
#include "qlm/errors.hpp"
#include "qlm/selftest.hpp"

namespace {

using nlohmann::json;

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        if (content.empty() || content.back() != '\n') std::cout << "\n";
    } else {
        qlm::write_file_atomic(out_path, content);
    }
}

void apply_overrides(qlm::RunConfig& cfg, unsigned grid_x, unsigned grid_t, double tol) {
    if (grid_x) cfg.grid.x_nodes = grid_x;
    if (grid_t) cfg.grid.t_samples = grid_t;
    if (tol > 0.0) {
        cfg.tol.root_residual = tol;
        cfg.tol.slice_consistency = tol;
        cfg.tol.curvature_floor_slack = tol;
    }
}

int emit_admissibility_error(const qlm::AdmissibilityError& e, const std::string& out) {
    json j{{"error", {{"code", 2}, {"reason", e.reason()}, {"message", e.what()}}}};
    emit(out, j.dump(2));
    return 2;
}

unsigned default_threads() {
    if (const char* env = std::getenv("QLM_THREADS")) {
        long v = std::atol(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hawking/Bartnik mass bounds for CMC spheres"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    unsigned grid_x = 0, grid_t = 0, threads = 0;
    double tol = 0.0;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        if (needs_config)
            cmd->add_option("config", config_path, "config file (.json or .toml)")->required();
        cmd->add_option("--out", out_path, "output file (default: stdout)");
        cmd->add_option("--grid", grid_x, "override x-node count");
        cmd->add_option("--grid-t", grid_t, "override t-sample count");
        cmd->add_option("--tol", tol, "override check tolerances");
        cmd->add_option("--threads", threads, "worker threads (sweep)");
    };

    auto* cmd_analyze = app.add_subcommand("analyze", "mass bounds report");
    add_common(cmd_analyze, true);
    auto* cmd_collar = app.add_subcommand("collar", "collar verification report");
    add_common(cmd_collar, true);
    auto* cmd_sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    add_common(cmd_sweep, true);
    auto* cmd_selftest = app.add_subcommand("selftest", "run the acceptance suite");
    add_common(cmd_selftest, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_selftest->parsed()) {
            int failures = qlm::run_selftest(std::cout);
            return failures == 0 ? 0 : 1;
        }

        if (cmd_analyze->parsed()) {
            auto cfg = qlm::load_run_config(config_path);
            apply_overrides(cfg, grid_x, grid_t, tol);
            if (!out_path.empty()) cfg.output = out_path;
            try {
                auto rep = qlm::analyze(cfg);
                emit(cfg.output, qlm::report_to_json(rep).dump(2));
            } catch (const qlm::AdmissibilityError& e) {
                return emit_admissibility_error(e, cfg.output);
            }
            return 0;
        }

        if (cmd_collar->parsed()) {
            auto cfg = qlm::load_run_config(config_path);
            apply_overrides(cfg, grid_x, grid_t, tol);
            if (!out_path.empty()) cfg.output = out_path;
            try {
                auto rep = qlm::run_collar(cfg);
                emit(cfg.output, qlm::collar_report_to_json(rep).dump(2));
                return rep.breach ? 3 : 0;
            } catch (const qlm::AdmissibilityError& e) {
                return emit_admissibility_error(e, cfg.output);
            }
        }

        if (cmd_sweep->parsed()) {
            auto spec = qlm::load_sweep_spec(config_path);
            if (!out_path.empty()) spec.output = out_path;
            auto result = qlm::run_sweep(spec, threads ? threads : default_threads());
            emit(spec.output, qlm::sweep_to_csv(result));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
