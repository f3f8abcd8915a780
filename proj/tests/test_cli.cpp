// Drives the built `qlm` binary end to end: exit codes, determinism,
// the error contract and file outputs.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path out = fs::temp_directory_path() / ("qlm_cli_out_" + std::to_string(counter++));
    std::string cmd = std::string(QLM_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out);
    std::stringstream buf;
    buf << in.rdbuf();
    fs::remove(out);
    return RunResult{WEXITSTATUS(rc), buf.str()};
}

fs::path write_temp(const std::string& name, const std::string& content) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p);
    out << content;
    return p;
}

const char* kRoundConfig = R"({
  "metric": {"type": "round", "r_o": 1.0},
  "H_o": 1.0
})";

const char* kNonconvexConfig = R"({
  "metric": {"type": "axisym", "r_o": 1.0,
             "w": {"basis": "poly", "data": [2.2, 0.0, -1.2]}},
  "H_o": 1.0
})";

}  // namespace

TEST_CASE("analyze: round flat run succeeds with theta = 1") {
    auto cfg = write_temp("qlm_round.json", kRoundConfig);
    auto r = run_cli("analyze " + cfg.string());
    CHECK(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    CHECK(j["flat"]["theta"].get<double>() == 1.0);
    CHECK(j["flat"]["m_H"]["value"].get<double>() == doctest::Approx(0.375));
    fs::remove(cfg);
}

TEST_CASE("analyze: identical configs give byte-identical reports") {
    auto cfg = write_temp("qlm_round2.json", kRoundConfig);
    auto a = run_cli("analyze " + cfg.string());
    auto b = run_cli("analyze " + cfg.string());
    CHECK(a.exit_code == 0);
    CHECK(a.stdout_text == b.stdout_text);
    fs::remove(cfg);
}

TEST_CASE("analyze: flat pipeline on a nonconvex metric exits 2 with a reason") {
    auto cfg = write_temp("qlm_nonconvex.json", kNonconvexConfig);
    auto r = run_cli("analyze " + cfg.string());
    CHECK(r.exit_code == 2);
    json j = json::parse(r.stdout_text);
    CHECK(j["error"]["reason"] == "beta_nonpositive");
    fs::remove(cfg);
}

TEST_CASE("analyze: missing file exits 1") {
    auto r = run_cli("analyze /nonexistent/qlm_config.json");
    CHECK(r.exit_code == 1);
}

TEST_CASE("analyze: --out writes the file atomically") {
    auto cfg = write_temp("qlm_round3.json", kRoundConfig);
    fs::path out = fs::temp_directory_path() / "qlm_report_out.json";
    auto r = run_cli("analyze " + cfg.string() + " --out " + out.string());
    CHECK(r.exit_code == 0);
    REQUIRE(fs::exists(out));
    std::ifstream in(out);
    json j = json::parse(in);
    CHECK(j["schema_version"] == 1);
    CHECK_FALSE(fs::exists(out.string() + ".tmp"));
    fs::remove(out);
    fs::remove(cfg);
}

TEST_CASE("collar: round metric certificate is clean; halved A breaches") {
    const char* base = R"({
      "metric": {"type": "axisym", "r_o": 1.0,
                 "w": {"basis": "poly", "data": [1.1, 0.0, -0.1]}},
      "H_o": 1.6,
      "collar": {"m": -100.0%s}
    })";
    char buf[512];
    std::snprintf(buf, sizeof(buf), base, "");
    auto cfg = write_temp("qlm_collar.json", buf);
    auto r = run_cli("collar " + cfg.string() + " --grid 129 --grid-t 51");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    CHECK(j["breach"] == false);
    CHECK(j["certificate"]["min_R"].get<double>() >= -1e-10);
    CHECK(j["A_o"]["residual"].get<double>() < 1e-9);
    fs::remove(cfg);

    std::snprintf(buf, sizeof(buf), base, ", \"A_scale\": 0.5");
    auto cfg2 = write_temp("qlm_collar_half.json", buf);
    auto r2 = run_cli("collar " + cfg2.string() + " --grid 129 --grid-t 51");
    CHECK(r2.exit_code == 3);
    json j2 = json::parse(r2.stdout_text);
    CHECK(j2["breach"] == true);
    fs::remove(cfg2);
}

TEST_CASE("collar: limit mode emits a monotone deviation table") {
    const char* cfgtext = R"({
      "metric": {"type": "axisym", "r_o": 1.0,
                 "w": {"basis": "poly", "data": [1.1, 0.0, -0.1]}},
      "H_o": 1.6,
      "collar": {"m": -100.0, "limit_mode": true, "j_lo": 2, "j_hi": 6}
    })";
    auto cfg = write_temp("qlm_collar_limit.json", cfgtext);
    auto r = run_cli("collar " + cfg.string() + " --grid 65 --grid-t 21");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    REQUIRE(j.contains("limit_study"));
    auto rows = j["limit_study"]["rows"];
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i]["dev_u"].get<double>() <= rows[i - 1]["dev_u"].get<double>());
    fs::remove(cfg);
}

TEST_CASE("sweep: CSV shape, 17 significant digits, empty-cell reasons") {
    const char* spec = R"({
      "axes": [{"name": "tau", "min": 0.0, "max": 1.0, "count": 3},
               {"name": "zeta", "min": 0.0, "max": 4.0, "count": 3}],
      "quantities": ["theta", "small_tau_comparison_bound"]
    })";
    auto cfg = write_temp("qlm_sweep.json", spec);
    auto r = run_cli("sweep " + cfg.string());
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.stdout_text);
    std::string version, header;
    std::getline(lines, version);
    CHECK(version == "# schema_version 1");
    std::getline(lines, header);
    CHECK(header == "tau,zeta,theta,small_tau_comparison_bound,reason");
    int rows = 0;
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 9);
    // 17-digit round trip: theta for tau=1,zeta=4 reparses to the same double
    CHECK(r.stdout_text.find("small_tau_bound_undefined") != std::string::npos);
    fs::remove(cfg);
}

TEST_CASE("collar: round metric keeps a nonnegative certificate") {
    const char* cfgtext = R"({
      "metric": {"type": "round", "r_o": 1.0},
      "H_o": 1.0,
      "collar": {"m": -100.0}
    })";
    auto cfg = write_temp("qlm_collar_round.json", cfgtext);
    auto r = run_cli("collar " + cfg.string() + " --grid 65 --grid-t 21");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    CHECK(j["breach"] == false);
    CHECK(j["certificate"]["min_R"].get<double>() >= 0.0);
    fs::remove(cfg);
}

TEST_CASE("sweep honors the QLM_THREADS fallback") {
    const char* spec = R"({
      "axes": [{"name": "tau", "min": 0.1, "max": 0.9, "count": 7}],
      "quantities": ["theta"]
    })";
    auto cfg = write_temp("qlm_sweep_threads.json", spec);
    auto serial = run_cli("sweep " + cfg.string() + " --threads 1");
    fs::path out = fs::temp_directory_path() / "qlm_sweep_env_out.csv";
    std::string cmd = "QLM_THREADS=3 " + std::string(QLM_CLI_PATH) + " sweep " +
                      cfg.string() + " > " + out.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    std::ifstream in(out);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == serial.stdout_text);
    fs::remove(out);
    fs::remove(cfg);
}

TEST_CASE("toml config parses equivalently") {
    const char* toml = R"(
H_o = 1.0
[metric]
type = "round"
r_o = 1.0
)";
    auto cfg = write_temp("qlm_round.toml", toml);
    auto r = run_cli("analyze " + cfg.string());
    CHECK(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    CHECK(j["flat"]["theta"].get<double>() == 1.0);
    fs::remove(cfg);
}
